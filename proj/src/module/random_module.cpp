#include "prokit/random.hpp"

namespace prokit {

namespace {

FgModule cyclic(Rng& rng, const RingPtr& r) {
  FgModule reg = FgModule::regular(r);
  std::vector<Vec> rel;
  for (long k = rng.range(0, 2); k > 0; --k) rel.push_back(random_nonunit(rng, *r));
  return quotient_module(reg, generated_submodule(reg, rel)).module;
}

FgModule candidate(Rng& rng, const RingPtr& r) {
  switch (rng.range(0, 6)) {
    case 0:
      return FgModule::regular(r);
    case 1:
    case 2:
      return cyclic(rng, r);
    case 3: {
      FgModule reg = FgModule::regular(r);
      return submodule_as_module(reg, generated_submodule(reg, {random_nonunit(rng, *r)})).module;
    }
    case 4:
      return direct_sum({cyclic(rng, r), cyclic(rng, r)});
    case 5: {
      FgModule f = FgModule::free(r, 2);
      std::vector<Vec> rel;
      for (long k = rng.range(1, 2); k > 0; --k) {
        Vec a = random_element(rng, *r), b = random_element(rng, *r);
        a.insert(a.end(), b.begin(), b.end());
        rel.push_back(a);
      }
      return quotient_module(f, generated_submodule(f, rel)).module;
    }
    default:
      return matlis_dual(cyclic(rng, r));
  }
}

}  // namespace

FgModule random_module(Rng& rng, const RingPtr& r, long max_order) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    FgModule m = candidate(rng, r);
    if (m.order() <= max_order && !m.is_zero()) return m;
  }
  FgModule m = cyclic(rng, r);
  return m.order() <= max_order ? m : FgModule::zero(r);
}

}  // namespace prokit
