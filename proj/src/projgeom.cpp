#include "factlab/projgeom.hpp"

#include <limits>
#include <string>

namespace factlab {

std::uint64_t projective_count(int n, std::uint32_t p) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0, power = 1;
  for (int k = 0; k <= n; ++k) {
    if (total > kMax - power) return kMax;
    total += power;
    if (k < n) {
      if (power > kMax / p) return kMax;
      power *= p;
    }
  }
  return total;
}

ProjectiveRange::ProjectiveRange(int n, std::uint32_t p, std::uint64_t cap) : n_(n), p_(p) {
  if (n < 1) throw Error(ErrorCode::BadParams, "projective dimension must be >= 1");
  size_ = projective_count(n, p);
  if (size_ > cap) {
    throw Error(ErrorCode::TooLarge, "P^" + std::to_string(n) + "(F_" + std::to_string(p) + ") has " +
                                         std::to_string(size_) + " points, cap is " + std::to_string(cap));
  }
}

void ProjectiveRange::coords_at(std::uint64_t index, std::vector<std::uint32_t>& out) const {
  if (index >= size_) throw Error(ErrorCode::BadParams, "enumeration index out of range");
  out.assign(static_cast<std::size_t>(n_ + 1), 0);
  std::uint64_t block = size_ - projective_count(n_ - 1, p_);  // p^n
  for (int k = 0; k <= n_; ++k) {
    if (index < block) {
      out[static_cast<std::size_t>(k)] = 1;
      for (int j = n_; j > k; --j) {
        out[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
      }
      return;
    }
    index -= block;
    block /= p_;
  }
}

ProjPoint<Fp> ProjectiveRange::to_point(const std::vector<std::uint32_t>& raw) const {
  std::vector<Fp> c(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) c[i] = Fp{raw[i], p_};
  return ProjPoint<Fp>::from_coords(std::move(c));
}

ProjPoint<Fp> ProjectiveRange::at(std::uint64_t index) const {
  std::vector<std::uint32_t> raw;
  coords_at(index, raw);
  return to_point(raw);
}

std::vector<ProjPoint<Fp>> enumerate_projective(int n, std::uint32_t p, std::uint64_t cap) {
  const ProjectiveRange range(n, p, cap);
  std::vector<ProjPoint<Fp>> out;
  out.reserve(range.size());
  range.for_each(0, range.size(), [&](ProjPoint<Fp> pt) { out.push_back(std::move(pt)); });
  return out;
}

}  // namespace factlab
