#include "ikernel/derivation.hpp"

namespace ikernel {

Derivation::Derivation(VarSystemPtr vs) : vs_(std::move(vs)) {
  images_.reserve(vs_->size());
  for (std::size_t i = 0; i < vs_->size(); ++i) images_.emplace_back(vs_);
}

Derivation::Derivation(VarSystemPtr vs, const std::map<std::string, Polynomial>& images)
    : Derivation(std::move(vs)) {
  for (const auto& [name, img] : images) {
    const auto i = vs_->index(name);
    if (vs_->role(i) != VarRole::coordinate) {
      throw std::invalid_argument("derivation image given for parameter '" + name + "'");
    }
    if (!same_system(img.varsys(), vs_)) {
      throw VarSystemMismatch("image of '" + name + "' is not in the derivation's system");
    }
    images_[i] = img;
  }
}

Derivation Derivation::partial(const VarSystemPtr& vs, std::string_view name) {
  return Derivation(vs, {{std::string(name), Polynomial(vs, Rational(1))}});
}

std::map<std::string, Polynomial> Derivation::images() const {
  std::map<std::string, Polynomial> out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!images_[i].is_zero()) out.emplace(vs_->name(i), images_[i]);
  }
  return out;
}

std::optional<int> Derivation::degree_shift() const {
  std::optional<int> shift;
  for (const auto& img : images_) {
    if (img.is_zero()) continue;
    if (!img.is_homogeneous()) return std::nullopt;
    const int s = img.degree() - 1;
    if (shift && *shift != s) return std::nullopt;
    shift = s;
  }
  return shift ? shift : std::optional<int>(0);
}

Polynomial apply(const Derivation& d, const Polynomial& f) {
  if (!same_system(d.varsys(), f.varsys())) {
    throw VarSystemMismatch("derivation applied to a polynomial of another system");
  }
  Polynomial out(f.varsys());
  for (std::size_t v = 0; v < f.varsys()->size(); ++v) {
    const auto& img = d.image(v);
    if (img.is_zero()) continue;
    const auto dv = partial_derivative(f, v);
    if (!dv.is_zero()) out += img * dv;
  }
  return out;
}

std::optional<std::size_t> nilpotency_index(const Derivation& d, const Polynomial& f,
                                            std::size_t max_steps) {
  Polynomial cur = f;
  for (std::size_t n = 0; n <= max_steps; ++n) {
    if (cur.is_zero()) return n;
    if (n < max_steps) cur = apply(d, cur);
  }
  return std::nullopt;
}

PreservationReport preserves_subalgebra(const Derivation& d, const GradedBasis& a,
                                        std::uint32_t check_degree) {
  PreservationReport report;
  for (const auto& g : a.spec().generators()) {
    if (g.poly.degree() > static_cast<int>(check_degree)) {
      report.skipped.push_back(g.label);
      continue;
    }
    Polynomial image = apply(d, g.poly);
    auto cert = membership(a, image);
    if (!cert) {
      report.preserved = false;
      report.failing_generator = g.label;
      report.failing_image = std::move(image);
      return report;
    }
    report.certificates.emplace_back(g.label, std::move(*cert));
  }
  return report;
}

SpanBasis kernel_graded_basis(const std::vector<Derivation>& ds, const VarSystemPtr& vs,
                              std::uint32_t d) {
  auto frame = degree_frame(vs, d);
  const auto rows = static_cast<Index>(frame.size());
  if (ds.empty()) return full_piece(vs, d);

  // Row i: images of frame monomial i under every derivation, side by side.
  std::vector<std::vector<Polynomial>> images(ds.size());
  std::vector<std::vector<Monomial>> image_frames(ds.size());
  Index cols = 0;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    if (!same_system(ds[k].varsys(), vs)) throw VarSystemMismatch("kernel: system mismatch");
    if (!ds[k].degree_shift()) {
      throw UnsupportedDerivation("derivation images are not homogeneous of a common degree");
    }
    std::vector<Monomial> seen;
    for (const auto& m : frame) {
      images[k].push_back(apply(ds[k], Polynomial(vs, m)));
      for (const auto& [mm, c] : images[k].back().terms()) seen.push_back(mm);
    }
    image_frames[k] = frame_union(seen, {});
    cols += static_cast<Index>(image_frames[k].size());
  }

  RationalMatrix map = RationalMatrix::Zero(rows, cols);
  Index offset = 0;
  for (std::size_t k = 0; k < ds.size(); ++k) {
    SpanBasis target(vs, image_frames[k]);
    for (Index i = 0; i < rows; ++i) {
      map.block(i, offset, 1, target.frame_size()) = *target.to_row(images[k][static_cast<std::size_t>(i)]);
    }
    offset += target.frame_size();
  }

  const RationalMatrix kernel = nullspace(map.transpose());
  std::vector<Polynomial> polys;
  for (Index k = 0; k < kernel.cols(); ++k) {
    Polynomial p(vs);
    for (Index i = 0; i < rows; ++i) {
      if (kernel(i, k) != 0) p.add_term(frame[static_cast<std::size_t>(i)], kernel(i, k));
    }
    polys.push_back(std::move(p));
  }
  return SpanBasis::span_of(vs, frame, polys);
}

SpanBasis kernel_graded_basis(const std::vector<Derivation>& ds, const GradedBasis& a,
                              std::uint32_t d) {
  return intersect_spans(kernel_graded_basis(ds, a.varsys(), d), a.piece(d).basis);
}

}  // namespace ikernel
