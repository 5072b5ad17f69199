// stip: command-line front end.
//
//   stip solve -g GRAPH -t TREE [--directed] [--oracle] [--cert] [--trace] [--fallback]
//   stip kernel -g GRAPH
//   stip gen --n N --k K --seed S [--directed] [--planted] -o DIR
//   stip bench --nmax N --kmax K --reps R --csv FILE [--compare-oracle] [--directed]
//
// Exit status: 0 YES (or success), 1 NO, 2 error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stip/stip.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

stip::AnyGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stip::InputError("cannot open " + path);
  try {
    return stip::parse_graph(in);
  } catch (const stip::ParseError& e) {
    throw stip::InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw stip::InputError("cannot write " + path.string());
  out << text;
}

struct SolveArgs {
  std::string graph, tree;
  bool directed = false, oracle = false, cert = false, trace = false, fallback = false;
};

int cmd_solve(const SolveArgs& a) {
  auto graph = read_graph_file(a.graph);
  auto target = read_graph_file(a.tree);
  const bool graph_directed = std::holds_alternative<stip::DiGraph>(graph);
  const bool tree_directed = std::holds_alternative<stip::DiGraph>(target);
  if (graph_directed != a.directed)
    throw stip::InputError(a.directed ? "--directed given but the graph file is undirected (U)"
                                      : "graph file is directed (D); pass --directed");
  if (tree_directed != a.directed)
    throw stip::InputError(a.directed ? "--directed given but the tree file is undirected (U)"
                                      : "tree file is directed (D); pass --directed");

  std::ostream* trace = a.trace ? &std::cerr : nullptr;
  stip::Verdict verdict;
  bool disconnected = false;
  if (!a.directed) {
    const auto& g = std::get<stip::UGraph>(graph);
    const auto& t = std::get<stip::UGraph>(target);
    disconnected = !stip::is_connected(g);
    if (a.oracle) {
      stip::OracleStats st;
      verdict = stip::oracle_undirected(g, t, &st);
      if (trace) *trace << "oracle subsets=" << st.subsets << '\n';
    } else {
      stip::PustipOptions opt;
      opt.fallback = a.fallback;
      opt.trace = trace;
      stip::PustipStats st;
      verdict = stip::solve_pustip(g, t, opt, &st);
      if (trace)
        *trace << "summary route=" << st.route << " k=" << st.k << " attempts=" << st.attempts
               << " branches=" << st.branches << " fallback=" << (a.fallback ? "on" : "off")
               << " fallback_branches=" << st.fallback_branches
               << " fallback_needed=" << (st.fallback_needed ? 1 : 0) << '\n';
    }
  } else {
    const auto& d = std::get<stip::DiGraph>(graph);
    const auto& t = std::get<stip::DiGraph>(target);
    disconnected = !stip::is_connected(d.underlying());
    if (a.oracle) {
      stip::OracleStats st;
      verdict = stip::oracle_directed(d, t, &st);
      if (trace) *trace << "oracle subsets=" << st.subsets << '\n';
    } else {
      stip::PdstipOptions opt;
      opt.trace = trace;
      stip::PdstipStats st;
      verdict = stip::solve_pdstip(d, t, opt, &st);
      if (trace)
        *trace << "summary route=" << st.route << " k=" << st.k << " kernel_edges=" << st.kernel_edges
               << " roots=" << st.roots.size() << " plans=" << st.plans << '\n';
    }
  }
  if (disconnected) std::cerr << "note: graph is not connected, no spanning tree exists\n";

  std::cout << stip::to_string(verdict.answer) << '\n';
  if (verdict.yes() && a.cert) {
    const auto& map = *verdict.mapping;
    for (std::size_t v = 0; v < map.size(); ++v) std::cout << "map " << v << ' ' << map[v] << '\n';
    std::cout << "removed";
    for (auto e : *verdict.removed) std::cout << ' ' << e;
    std::cout << '\n';
  }
  return verdict.yes() ? kExitYes : kExitNo;
}

int cmd_kernel(const std::string& path) {
  const auto graph = read_graph_file(path);
  const auto g = std::holds_alternative<stip::UGraph>(graph) ? std::get<stip::UGraph>(graph)
                                                             : std::get<stip::DiGraph>(graph).underlying();
  const auto kernel = stip::make_contractible(g);
  std::cout << stip::serialize(kernel.g_prime);
  for (std::size_t i = 0; i < kernel.delta.size(); ++i) std::cout << "# anchor " << i << " = " << kernel.delta[i] << '\n';
  for (std::size_t e = 0; e < kernel.chains.size(); ++e) {
    std::cout << "# chain " << e << " =";
    for (auto v : kernel.chains[e].vertices) std::cout << ' ' << v;
    std::cout << '\n';
  }
  return kExitYes;
}

struct GenArgs {
  long n = 0, k = 0;
  std::uint64_t seed = 0;
  bool directed = false, planted = false;
  std::string dir;
};

int cmd_gen(const GenArgs& a) {
  stip::GenSpec spec;
  spec.n = static_cast<stip::VertexId>(a.n);
  spec.k = a.k;
  spec.seed = a.seed;
  spec.directed = a.directed;
  spec.mode = a.planted ? stip::GenMode::PlantedYes : stip::GenMode::Random;
  const auto inst = stip::gen_instance(spec);
  const std::filesystem::path dir(a.dir);
  std::filesystem::create_directories(dir);
  auto text = [](const stip::AnyGraph& g) { return std::visit([](const auto& x) { return stip::serialize(x); }, g); };
  write_file(dir / "graph.txt", text(inst.graph));
  write_file(dir / "tree.txt", text(inst.target));
  write_file(dir / "manifest.txt", stip::manifest(spec, inst));
  return kExitYes;
}

struct BenchArgs {
  long nmin = 5, nmax = 12, kmax = 3, reps = 1;
  std::uint64_t seed = 0;
  std::string csv;
  bool compare_oracle = false, directed = false;
  bool fallback = false, no_fallback = false;
};

std::uint64_t bench_seed(std::uint64_t base, long n, long k, long rep) {
  return ((base * 1009 + static_cast<std::uint64_t>(n)) * 101 + static_cast<std::uint64_t>(k)) * 100003 +
         static_cast<std::uint64_t>(rep);
}

int cmd_bench(const BenchArgs& a) {
  if (a.nmin < 2 || a.nmax < a.nmin || a.kmax < 0 || a.reps < 1) throw stip::InputError("bad bench ranges");
  const bool fallback = a.no_fallback ? false : (a.fallback || a.compare_oracle);
  std::ofstream csv(a.csv, std::ios::binary);
  if (!csv) throw stip::InputError("cannot write " + a.csv);
  csv << "n,k,mode,seed,solver,verdict,wall_time_micros,work\n";

  long instances = 0, skipped = 0, disagreements = 0, planted_misses = 0, fallback_needed = 0;
  using clock = std::chrono::steady_clock;
  auto micros = [](clock::duration d) { return std::chrono::duration_cast<std::chrono::microseconds>(d).count(); };

  for (long n = a.nmin; n <= a.nmax; ++n) {
    for (long k = 0; k <= a.kmax; ++k) {
      for (long rep = 0; rep < a.reps; ++rep) {
        stip::GenSpec spec;
        spec.n = static_cast<stip::VertexId>(n);
        spec.k = k;
        spec.seed = bench_seed(a.seed, n, k, rep);
        spec.directed = a.directed;
        spec.mode = rep % 2 == 0 ? stip::GenMode::PlantedYes : stip::GenMode::Random;
        try {
          stip::validate(spec);
        } catch (const stip::InputError&) {
          ++skipped;
          continue;
        }
        const auto inst = stip::gen_instance(spec);
        ++instances;
        auto row = [&](const char* solver, const stip::Verdict& v, long us, long work) {
          csv << n << ',' << k << ',' << stip::to_string(spec.mode) << ',' << spec.seed << ',' << solver << ','
              << stip::to_string(v.answer) << ',' << us << ',' << work << '\n';
        };

        stip::Verdict fpt, oracle;
        long fpt_work = 0, oracle_work = 0;
        auto t0 = clock::now();
        if (!a.directed) {
          stip::PustipOptions opt;
          opt.fallback = fallback;
          stip::PustipStats st;
          fpt = stip::solve_pustip(std::get<stip::UGraph>(inst.graph), std::get<stip::UGraph>(inst.target), opt, &st);
          fpt_work = st.branches;
          if (st.fallback_needed) ++fallback_needed;
        } else {
          stip::PdstipStats st;
          fpt = stip::solve_pdstip(std::get<stip::DiGraph>(inst.graph), std::get<stip::DiGraph>(inst.target), {}, &st);
          fpt_work = st.plans;
        }
        row("fpt", fpt, micros(clock::now() - t0), fpt_work);
        if (inst.truth == stip::Truth::Yes && !fpt.yes()) ++planted_misses;

        if (a.compare_oracle) {
          stip::OracleStats st;
          t0 = clock::now();
          oracle = a.directed ? stip::oracle_directed(std::get<stip::DiGraph>(inst.graph),
                                                      std::get<stip::DiGraph>(inst.target), &st)
                              : stip::oracle_undirected(std::get<stip::UGraph>(inst.graph),
                                                        std::get<stip::UGraph>(inst.target), &st);
          oracle_work = st.subsets;
          row("oracle", oracle, micros(clock::now() - t0), oracle_work);
          if (oracle.answer != fpt.answer) {
            ++disagreements;
            std::cerr << "disagreement: n=" << n << " k=" << k << " seed=" << spec.seed
                      << " fpt=" << stip::to_string(fpt.answer) << " oracle=" << stip::to_string(oracle.answer) << '\n';
          }
        }
      }
    }
  }
  std::cout << "instances=" << instances << " skipped=" << skipped << " disagreements=" << disagreements
            << " planted_misses=" << planted_misses << " fallback=" << (fallback ? "on" : "off")
            << " fallback_needed=" << fallback_needed << '\n';
  return disagreements == 0 && planted_misses == 0 ? kExitYes : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spanning tree isomorphism toolkit"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "decide whether the graph has a spanning tree isomorphic to the target");
  s->add_option("-g,--graph", solve.graph, "graph file")->required();
  s->add_option("-t,--tree", solve.tree, "target tree file")->required();
  s->add_flag("--directed", solve.directed, "directed graph, arborescence target");
  s->add_flag("--oracle", solve.oracle, "exhaustive search instead of the FPT solver");
  s->add_flag("--cert", solve.cert, "print the certificate after YES");
  s->add_flag("--trace", solve.trace, "search counters on stderr");
  s->add_flag("--fallback", solve.fallback, "undirected: enumerate all neighbour bindings");

  std::string kernel_graph;
  auto* kc = app.add_subcommand("kernel", "print the kernel and its chains");
  kc->add_option("-g,--graph", kernel_graph, "graph file")->required();

  GenArgs gen;
  auto* gc = app.add_subcommand("gen", "write a seeded instance");
  gc->add_option("--n", gen.n, "vertices")->required();
  gc->add_option("--k", gen.k, "redundant edges")->required();
  gc->add_option("--seed", gen.seed, "seed")->required();
  gc->add_flag("--directed", gen.directed, "directed instance");
  gc->add_flag("--planted", gen.planted, "plant the target (truth YES)");
  gc->add_option("-o,--out", gen.dir, "output directory")->required();

  BenchArgs bench;
  auto* bc = app.add_subcommand("bench", "run a seeded corpus and write CSV");
  bc->add_option("--nmin", bench.nmin, "smallest n")->capture_default_str();
  bc->add_option("--nmax", bench.nmax, "largest n")->required();
  bc->add_option("--kmax", bench.kmax, "largest k")->required();
  bc->add_option("--reps", bench.reps, "instances per (n, k)")->required();
  bc->add_option("--seed", bench.seed, "base seed")->capture_default_str();
  bc->add_option("--csv", bench.csv, "output CSV")->required();
  bc->add_flag("--compare-oracle", bench.compare_oracle, "check every verdict against the oracle");
  bc->add_flag("--directed", bench.directed, "directed instances");
  auto* fb = bc->add_flag("--fallback", bench.fallback, "force fallback on");
  bc->add_flag("--no-fallback", bench.no_fallback, "force fallback off")->excludes(fb);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*kc) return cmd_kernel(kernel_graph);
    if (*gc) return cmd_gen(gen);
    if (*bc) return cmd_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
