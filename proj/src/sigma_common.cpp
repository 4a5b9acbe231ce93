#include "lpvss/sigma.hpp"

#include "lpvss/wide.hpp"

namespace lpvss {

namespace {

const ParamSet& checked(const ParamSet& ps) {
  require(validate_params(ps).empty(),
          "SigmaContext: parameter set fails validation");
  return ps;
}

}  // namespace

SigmaContext::SigmaContext(const ParamSet& params)
    : ps(checked(params)),
      mq(ps.q),
      mp(ps.p),
      w_key(ps.sigma_key_q32),
      w_enc(ps.sigma_enc_q32),
      w_dec(ps.sigma_dec_q32),
      parity(parity_matrix(mp, ps.n, ps.t)) {}

bool norm2_le(const std::vector<i128>& x, u128 bound2) {
  wide::u256 acc = wide::make(0, 0);
  const wide::u256 cap = wide::make(0, bound2);
  for (const i128 v : x) {
    const u128 m = v < 0 ? u128(0) - u128(v) : u128(v);
    acc = wide::add(acc, wide::mul128(m, m));
    if (wide::cmp(acc, cap) > 0) return false;
  }
  return true;
}

}  // namespace lpvss
