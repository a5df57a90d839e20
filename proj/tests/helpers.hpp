#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "niltri/sltm.hpp"

namespace testutil {

inline niltri::Sltm sltm_from(const niltri::FieldSpec& f, const std::vector<std::string>& rows) {
  std::string text =
      "n=" + std::to_string(static_cast<int>(rows.size()) + 1) + "; field=" + f.to_string() + "\n";
  for (const auto& r : rows) text += r + "\n";
  return niltri::Sltm::from_text(text);
}

inline niltri::Scalar random_scalar(std::mt19937_64& rng, const niltri::FieldSpec& f,
                                    bool nonzero = false) {
  using niltri::Scalar;
  for (;;) {
    Scalar s =
        f.is_finite()
            ? Scalar::from_int(f, static_cast<std::int64_t>(
                                      rng() % static_cast<std::uint64_t>(f.p())))
            : Scalar::from_rational(
                  f, niltri::BigRational(static_cast<long>(rng() % 19) - 9,
                                         static_cast<long>(rng() % 9) + 1));
    if (!nonzero || !s.is_zero()) return s;
  }
}

inline niltri::Sltm random_sltm(std::mt19937_64& rng, int n, const niltri::FieldSpec& f) {
  niltri::Sltm t(n, f);
  for (int i = 2; i <= n; ++i)
    for (int j = 1; j < i; ++j) t.set(i, j, random_scalar(rng, f));
  return t;
}

}  // namespace testutil
