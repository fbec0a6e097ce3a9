#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwdgos::cli {

enum ExitCode { ok = 0, usage = 1, numerical = 2 };

// Raised for bad flag combinations that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemeArgs {
  std::string model = "records";
  std::size_t n = 0;
  double k = 1.0;
  std::vector<double> m;
};

struct GenerateArgs {
  SchemeArgs scheme;
  double alpha = 1.0;
  double beta = 1.0;
  std::size_t reps = 1;
  std::uint64_t seed = 20240917;
  std::string output;
};

struct EstimateArgs {
  std::string data;
  SchemeArgs scheme;
  bool transform = false;
  bool extract_records = false;
  std::string prior = "2,2,2,2";
  std::vector<std::string> losses{"self", "linex", "ge"};
  std::vector<std::string> methods{"lindley", "tk", "mcmc"};
  double t = 0.5;
  double c = 0.5;
  std::uint64_t seed = 20240917;
  std::size_t iterations = 11000;
  std::size_t burn_in = 1000;
  std::size_t chains = 2;
  std::string tk_alpha_prior = "full";
  std::string output;
};

struct SimulateArgs {
  std::string config;
  long long replications = -1;
  long long seed = -1;
  std::size_t jobs = 1;
  std::string output;
  std::string failures;
  bool print_plan = false;
};

struct DiagnoseArgs {
  std::string data;
  SchemeArgs scheme;
  bool transform = false;
  std::string prior = "2,2,2,2";
  std::size_t chains = 2;
  std::size_t iterations = 10000;
  std::uint64_t seed = 20240917;
  std::string output;
  std::string draws;
};

struct CottonArgs {
  bool sorted_records = false;
  std::string data;
  std::string prior = "2,2,2,2";
  double t = 0.5;
  double c = 0.5;
  std::uint64_t seed = 20240917;
  std::size_t iterations = 11000;
  std::size_t burn_in = 1000;
  std::string output;
};

int run_generate(const GenerateArgs& a, std::ostream& log);
int run_estimate(const EstimateArgs& a, std::ostream& log);
int run_simulate(const SimulateArgs& a, std::ostream& log);
int run_diagnose(const DiagnoseArgs& a, std::ostream& log);
int run_analyze_cotton(const CottonArgs& a, std::ostream& log);

}  // namespace uwdgos::cli
