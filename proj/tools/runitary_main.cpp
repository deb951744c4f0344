#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "runitary/channel.hpp"
#include "runitary/correction.hpp"
#include "runitary/decompose.hpp"
#include "runitary/json_io.hpp"
#include "runitary/povm.hpp"
#include "runitary/random.hpp"

namespace {

using namespace runitary;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + out_path);
  out << payload << "\n";
}

ToleranceConfig make_tol(double tol_flag) {
  ToleranceConfig tol;
  if (tol_flag > 0.0) {
    tol.eps_eq = tol_flag;
    tol.eps_psd = tol_flag;
    tol.eps_rank = tol_flag;
    tol.eps_unitary = 10.0 * tol_flag;
  }
  return tol;
}

int run_analyze(const std::string& input, const ToleranceConfig& tol,
                const std::string& out_path) {
  const KrausChannel ch = parse_channel_json(read_input(input), tol);
  const ChoiOperator r = kraus_to_choi(ch, tol);

  AnalysisResult a;
  a.rank = choi_rank(r, tol);
  a.tp = is_trace_preserving(ch, tol.eps_eq);
  if (ch.d_in == ch.d_out) {
    a.unital = is_unital(ch, tol);
    if (!a.unital) a.note = "not random-unitary: channel is not unital";
  } else {
    a.unital = false;
    a.note = "not random-unitary: input and output dimensions differ";
  }
  a.k_low = a.rank;
  a.k_high = a.rank * a.rank;
  a.h_bound_bits = 2.0 * std::log2(static_cast<double>(a.rank));
  emit(analysis_to_json(a), out_path);
  return 0;
}

int run_decompose(const std::string& input, const ToleranceConfig& tol, uint64_t seed,
                  int max_restarts, const std::vector<int>& schedule,
                  const std::string& out_path) {
  const KrausChannel ch = parse_channel_json(read_input(input), tol);
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.restarts = max_restarts;
  cfg.n_schedule = schedule;
  const SearchReport rep = decompose_channel(ch, cfg, tol);
  emit(search_report_to_json(rep), out_path);
  switch (rep.status) {
    case SearchStatus::found:
      return 0;
    case SearchStatus::not_found:
      std::cerr << "no random-unitary decomposition found within the schedule\n";
      return 4;
    case SearchStatus::not_unital:
      std::cerr << "channel is not unital, hence not random-unitary\n";
      return 5;
  }
  return 1;
}

int run_povm_reduce(const std::string& channel_path, const std::string& povm_path,
                    const ToleranceConfig& tol, const std::string& out_path) {
  const KrausChannel ch = parse_channel_json(read_input(channel_path), tol);
  const RankOnePovm povm = parse_povm_json(read_input(povm_path));
  if (!validate_povm(povm, tol))
    throw std::invalid_argument("POVM does not resolve the identity");
  if (!check_dice_condition(ch, povm, tol)) {
    std::cerr << "POVM fails the classical-dice condition for this channel\n";
    return 6;
  }
  const RuDecomposition dec = reduce_cardinality(ch, povm, tol);
  emit(decomposition_to_json(dec), out_path);
  return 0;
}

int run_simulate(const std::string& channel_path, const std::string& dec_path,
                 const ToleranceConfig& tol, uint64_t seed, int trials, int n_states,
                 const std::string& out_path) {
  const KrausChannel ch = parse_channel_json(read_input(channel_path), tol);
  const RuDecomposition dec = parse_decomposition_json(read_input(dec_path), tol);
  if (n_states < 1) throw std::invalid_argument("--states must be positive");

  std::mt19937_64 rng(mix_seed(seed, 2));
  std::vector<DensityMatrix> states;
  states.reserve(n_states);
  for (int i = 0; i < n_states; ++i) {
    const Vector psi = haar_state(ch.d_in, rng);
    states.push_back(DensityMatrix{psi * psi.adjoint()});
  }
  const CorrectionReport rep = simulate_correction(ch, dec, states, seed, trials, tol);
  emit(correction_report_to_json(rep), out_path);
  return 0;
}

int run_gen(int d, int k, uint64_t seed, const std::string& out_path,
            const std::string& out_decomp_path) {
  const auto [ch, dec] = generate_random_ru_channel(d, k, seed);
  const std::string ch_json = channel_to_json(ch);
  const std::string dec_json = decomposition_to_json(dec);
  if (out_path.empty() && out_decomp_path.empty()) {
    std::cout << "{\"channel\":" << ch_json << ",\"decomposition\":" << dec_json << "}\n";
    return 0;
  }
  if (!out_path.empty())
    emit(ch_json, out_path);
  else
    std::cout << ch_json << "\n";
  if (!out_decomp_path.empty())
    emit(dec_json, out_decomp_path);
  else if (out_path.empty())
    std::cout << dec_json << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random-unitary decompositions of quantum channels"};
  app.require_subcommand(1);
  app.fallthrough();

  double tol_flag = -1.0;
  uint64_t seed = 0;
  std::string out_path;
  app.add_option("--tol", tol_flag, "override numerical tolerance (eps_unitary scales by 10x)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--out", out_path, "write the result to a file instead of stdout");

  auto* analyze = app.add_subcommand("analyze", "rank, unitality and cardinality bounds");
  std::string analyze_input;
  analyze->add_option("input", analyze_input, "channel JSON file, or - for stdin")->required();

  auto* decompose = app.add_subcommand("decompose", "find a random-unitary decomposition");
  std::string decompose_input;
  int max_restarts = 20;
  std::vector<int> schedule;
  decompose->add_option("input", decompose_input, "channel JSON file, or - for stdin")->required();
  decompose->add_option("--max-restarts", max_restarts, "search restarts per cardinality");
  decompose->add_option("--schedule", schedule, "candidate cardinalities (default rank..rank^2)")
      ->delimiter(',');

  auto* reduce = app.add_subcommand("povm-reduce", "shrink a dice-satisfying POVM");
  std::string reduce_channel, reduce_povm;
  reduce->add_option("channel", reduce_channel, "channel JSON file, or - for stdin")->required();
  reduce->add_option("povm", reduce_povm, "POVM JSON file, or - for stdin")->required();

  auto* simulate = app.add_subcommand("simulate-correct", "environment-assisted correction run");
  std::string sim_channel, sim_dec;
  int trials = 0;
  int n_states = 100;
  simulate->add_option("channel", sim_channel, "channel JSON file, or - for stdin")->required();
  simulate->add_option("decomposition", sim_dec, "decomposition JSON file, or - for stdin")
      ->required();
  simulate->add_option("--trials", trials, "sampled measurement shots (0 = exact weights only)");
  simulate->add_option("--states", n_states, "number of Haar-random pure test states");

  auto* gen = app.add_subcommand("gen", "generate a random-unitary test instance");
  int gen_d = 0, gen_k = 0;
  std::string out_decomp;
  gen->add_option("--d", gen_d, "dimension")->required();
  gen->add_option("--k", gen_k, "number of unitaries")->required();
  gen->add_option("--out-decomp", out_decomp, "write the ground-truth decomposition to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const ToleranceConfig tol = make_tol(tol_flag);
  try {
    if (*analyze) return run_analyze(analyze_input, tol, out_path);
    if (*decompose)
      return run_decompose(decompose_input, tol, seed, max_restarts, schedule, out_path);
    if (*reduce) return run_povm_reduce(reduce_channel, reduce_povm, tol, out_path);
    if (*simulate)
      return run_simulate(sim_channel, sim_dec, tol, seed, trials, n_states, out_path);
    if (*gen) return run_gen(gen_d, gen_k, seed, out_path, out_decomp);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
