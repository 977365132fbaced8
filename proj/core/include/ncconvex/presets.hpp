#pragma once

// Named functions used by the CLI and the acceptance corpus.
//
//   square          x1^2
//   quartic         x1^4
//   kraus-halfmass  x1^2 (1 - x1/2)^{-1}, the Kraus form with a point mass at 1/2
//   mixed-ax        a1 x1 a1 + x1 a1 x1 + x1^2
//   quad-ax         x1^2 + a1 x1 + x1 a1 + a1^3

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncconvex/evaluation.hpp"
#include "ncconvex/one_var.hpp"

namespace ncconvex {

inline constexpr std::size_t kDefaultKrausTruncation = 48;

/// F(X) = f0 I + f1 X + (f2/2) sum_k w_k X^2 (I - lambda_k X)^{-1} in one
/// x-variable. Evaluates at complex X; carries its x-power series truncated
/// at `truncation` and the radius 1 / max |lambda_k|.
NcFunction kraus_lift(double f0, double f1, double f2, const DiscreteMeasure& mu,
                      std::size_t truncation = kDefaultKrausTruncation);

/// Z -> trace(Z_1) I: graded but does not respect direct sums.
NcFunction trace_evaluator(const Signature& sig);
/// Z -> I_n.
NcFunction identity_evaluator(const Signature& sig);

/// Expression text behind a polynomial preset, if it is one.
std::optional<std::pair<Signature, std::string>> preset_expression(std::string_view name);

std::optional<NcFunction> nc_preset(std::string_view name);
std::vector<std::string> nc_preset_names();

/// identity, square, cube, quartic, sqrt, kraus-halfmass.
std::optional<ScalarFn> scalar_preset(std::string_view name);
std::vector<std::string> scalar_preset_names();

}  // namespace ncconvex
