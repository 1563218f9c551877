#include "supermap/grassmann.hpp"

namespace supermap {

std::vector<int> mask_to_subset(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m) + 1);
    m &= m - 1;
  }
  return out;
}

Mask subset_to_mask(const std::vector<int>& subset, int n) {
  Mask m = 0;
  int prev = 0;
  for (int i : subset) {
    if (i < 1 || i > n) throw DimensionError("subset index out of range");
    if (i <= prev) throw PreconditionError("subset must be strictly ascending");
    prev = i;
    m |= Mask{1} << (i - 1);
  }
  return m;
}

GrassmannHom GrassmannHom::identity(int n) {
  GrassmannHom h{n, n, {}};
  for (int i = 1; i <= n; ++i) h.images.push_back(Grassmann::generator(n, i));
  return h;
}

GrassmannHom GrassmannHom::body_projection(int n) {
  GrassmannHom h{n, 0, {}};
  h.images.assign(n, Grassmann(0));
  return h;
}

bool hom_validate(const GrassmannHom& rho) {
  if (static_cast<int>(rho.images.size()) != rho.source) return false;
  for (const auto& img : rho.images) {
    if (img.generators() != rho.target) return false;
    if (!img.is_odd()) return false;
  }
  return true;
}

namespace {

void require_valid(const GrassmannHom& rho) {
  if (static_cast<int>(rho.images.size()) != rho.source)
    throw DimensionError("homomorphism needs one image per source generator");
  for (const auto& img : rho.images) {
    if (img.generators() != rho.target) throw DimensionError("generator image in the wrong algebra");
    if (!img.is_odd()) throw ParityError("generator image is not purely odd");
  }
}

}  // namespace

Grassmann hom_apply_monomial(const GrassmannHom& rho, Mask m) {
  Grassmann acc = Grassmann::scalar(rho.target, 1);
  while (m != 0) {
    const int i = std::countr_zero(m);
    m &= m - 1;
    acc = acc * rho.images.at(i);
    if (acc.is_zero()) break;
  }
  return acc;
}

Grassmann hom_apply(const GrassmannHom& rho, const Grassmann& a) {
  require_valid(rho);
  if (a.generators() != rho.source) throw DimensionError("element is not in the source algebra");
  Grassmann out(rho.target);
  for (const auto& [m, c] : a.terms()) out += hom_apply_monomial(rho, m) * c;
  return out;
}

GrassmannHom hom_compose(const GrassmannHom& sigma, const GrassmannHom& rho) {
  if (rho.target != sigma.source) throw DimensionError("homomorphisms do not compose");
  GrassmannHom out{rho.source, sigma.target, {}};
  for (const auto& img : rho.images) out.images.push_back(hom_apply(sigma, img));
  return out;
}

GrassmannHom hom_extend(const GrassmannHom& rho, int extra) {
  require_valid(rho);
  GrassmannHom out{rho.source + extra, rho.target + extra, {}};
  for (const auto& img : rho.images) out.images.push_back(img.embed(out.target, 0));
  for (int j = 1; j <= extra; ++j) out.images.push_back(Grassmann::generator(out.target, rho.target + j));
  return out;
}

}  // namespace supermap
