#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uwdgos/bayes.hpp"
#include "uwdgos/dgos.hpp"
#include "uwdgos/mcmc.hpp"
#include "uwdgos/tierney_kadane.hpp"

namespace uwdgos {

enum class Method { lindley, tk, mcmc };

std::string to_string(Method m);
Method parse_method(const std::string& text);
LossKind parse_loss_kind(const std::string& text);

/// Losses are laid out SELF, LINEX, GE and targets alpha, beta, R(t).
inline constexpr std::array<LossKind, 3> kLossOrder{LossKind::self, LossKind::linex, LossKind::ge};
inline constexpr std::size_t kGridSize = 9;

constexpr std::size_t grid_index(std::size_t loss, std::size_t target) { return loss * 3 + target; }
std::size_t loss_position(LossKind kind);

struct EstimationSettings {
  std::vector<LossKind> losses{LossKind::self, LossKind::linex, LossKind::ge};
  double t = 0.5;
  double c = 0.5;
  McmcConfig mcmc{};
  TkOptions tk{};
  /// MCMC chains on separate threads.
  bool parallel_chains = true;

  LossSpec loss(LossKind kind) const;
  std::array<Target, 3> targets() const;
};

/// Nine estimates of one method; cells that were not requested or failed are empty and
/// carry a reason.
struct EstimateGrid {
  std::array<std::optional<double>, kGridSize> value{};
  std::array<std::string, kGridSize> error{};

  bool any() const;
};

/// Runs one engine for every requested loss on alpha, beta and R(t). Engine failures that
/// affect every cell (for example a degenerate MLE) are reported in each requested cell.
EstimateGrid compute_estimates(Method method, const DgosSample& sample, const DgosScheme& scheme,
                               const GammaPriors& priors, const EstimationSettings& settings);

}  // namespace uwdgos
