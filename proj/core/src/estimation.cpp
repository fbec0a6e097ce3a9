#include "uwdgos/estimation.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

#include "uwdgos/errors.hpp"
#include "uwdgos/lindley.hpp"
#include "uwdgos/mle.hpp"

namespace uwdgos {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::lindley: return "lindley";
    case Method::tk: return "tk";
    case Method::mcmc: return "mcmc";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  const std::string s = lower(text);
  if (s == "lindley") return Method::lindley;
  if (s == "tk" || s == "t-k" || s == "tierney-kadane") return Method::tk;
  if (s == "mcmc") return Method::mcmc;
  throw ParseError("unknown method '" + text + "' (expected lindley, tk or mcmc)");
}

LossKind parse_loss_kind(const std::string& text) {
  const std::string s = lower(text);
  if (s == "self") return LossKind::self;
  if (s == "linex") return LossKind::linex;
  if (s == "ge" || s == "gelf") return LossKind::ge;
  throw ParseError("unknown loss '" + text + "' (expected self, linex or ge)");
}

std::size_t loss_position(LossKind kind) {
  switch (kind) {
    case LossKind::self: return 0;
    case LossKind::linex: return 1;
    case LossKind::ge: return 2;
  }
  return 0;
}

LossSpec EstimationSettings::loss(LossKind kind) const {
  switch (kind) {
    case LossKind::self: return LossSpec::self();
    case LossKind::linex: return LossSpec::linex(c);
    case LossKind::ge: return LossSpec::ge(c);
  }
  return LossSpec::self();
}

std::array<Target, 3> EstimationSettings::targets() const {
  return {Target::alpha(), Target::beta(), Target::reliability(t)};
}

bool EstimateGrid::any() const {
  return std::any_of(value.begin(), value.end(), [](const auto& v) { return v.has_value(); });
}

EstimateGrid compute_estimates(Method method, const DgosSample& sample, const DgosScheme& scheme,
                               const GammaPriors& priors, const EstimationSettings& settings) {
  EstimateGrid grid;
  const auto targets = settings.targets();

  auto fill_all = [&](const std::string& why) {
    for (LossKind kind : settings.losses) {
      for (std::size_t t = 0; t < 3; ++t) grid.error[grid_index(loss_position(kind), t)] = why;
    }
  };

  // Engine-level state built once and shared by every loss/target cell.
  std::optional<LindleyWorkspace> lindley_ws;
  std::optional<UwParams> mle;
  std::unique_ptr<TkEngine> tk;
  std::optional<PosteriorDraws> draws;
  try {
    switch (method) {
      case Method::lindley:
        mle = fit_mle(sample, scheme).params;
        lindley_ws = lindley_derivatives(sample, scheme, priors, *mle);
        break;
      case Method::tk:
        tk = std::make_unique<TkEngine>(sample, scheme, priors, settings.tk);
        break;
      case Method::mcmc:
        draws = pool(run_chains(sample, scheme, priors, settings.mcmc, settings.parallel_chains));
        break;
    }
  } catch (const Error& e) {
    fill_all(e.what());
    return grid;
  }

  for (LossKind kind : settings.losses) {
    const LossSpec loss = settings.loss(kind);
    for (std::size_t t = 0; t < 3; ++t) {
      const std::size_t idx = grid_index(loss_position(kind), t);
      try {
        switch (method) {
          case Method::lindley: grid.value[idx] = lindley_estimate(*lindley_ws, *mle, loss, targets[t]); break;
          case Method::tk: grid.value[idx] = tk->estimate(loss, targets[t]); break;
          case Method::mcmc: grid.value[idx] = mcmc_estimate(*draws, loss, targets[t]); break;
        }
      } catch (const Error& e) {
        grid.error[idx] = e.what();
      }
    }
  }
  return grid;
}

}  // namespace uwdgos
