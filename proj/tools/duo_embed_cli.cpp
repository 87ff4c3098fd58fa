// duo-embed: joint kernel embeddings of two datasets from the command line.
#include "duo/error.hpp"
#include "duo/experiments.hpp"
#include "duo/parallel.hpp"
#include "duo/rng.hpp"
#include "duo/serialize.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <iostream>
#include <mutex>

namespace {

constexpr int kExitError = 1;
constexpr int kExitNotAlignable = 2;
constexpr int kExitNoise = 3;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("bad integer '" + std::string(s) + "'");
  return v;
}

double parse_real(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw UsageError("bad number '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    out.push_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

// "2-7", "2,3,5" or mixtures like "1-3,8".
duo::IndexSet parse_index_list(const std::string& text) {
  duo::IndexSet out;
  if (text.empty()) return out;
  for (auto part : split(text, ',')) {
    auto dash = part.find('-', 1);
    if (dash == std::string_view::npos) {
      out.push_back(parse_int(part));
      continue;
    }
    int a = parse_int(part.substr(0, dash)), b = parse_int(part.substr(dash + 1));
    if (b < a) throw UsageError("descending range '" + std::string(part) + "'");
    for (int i = a; i <= b; ++i) out.push_back(i);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_real(part));
  return out;
}

void emit_json(const std::string& out, const nlohmann::json& j) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    duo::write_json(out, j);
}

struct Inputs {
  std::string x, y;
  bool header = false;
  void add(CLI::App* app) {
    app->add_option("--x", x, "CSV of the first dataset (rows = samples)")->required();
    app->add_option("--y", y, "CSV of the second dataset")->required();
    app->add_flag("--header", header, "input CSVs start with a header row");
  }
  std::pair<duo::DataMatrix, duo::DataMatrix> load() const {
    auto dx = duo::load_csv(x, header), dy = duo::load_csv(y, header);
    return {duo::center_columns(dx), duo::center_columns(dy)};
  }
};

double parse_omega(const std::string& s, bool& is_auto) {
  is_auto = s == "auto";
  return is_auto ? duo::kDefaultOmega : parse_real(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint kernel embeddings of two datasets via the duo-landmark kernel"};
  app.require_subcommand(1);
  std::function<int()> action;
  std::function<int()> simulate;

  // embed
  auto* embed = app.add_subcommand("embed", "screen, optionally noise-check, and embed two datasets");
  Inputs embed_in;
  std::string omega_text = "0.5", gamma1_text = "2-7", gamma2_text = "2-7", screen_gamma_text = "1-10",
              embed_out;
  duo::RunConfig cfg;
  embed_in.add(embed);
  embed->add_option("--omega", omega_text, "bandwidth percentile in (0,1) or 'auto'")->capture_default_str();
  embed->add_option("--gamma1", gamma1_text, "component indices for x, e.g. 2-7")->capture_default_str();
  embed->add_option("--gamma2", gamma2_text, "component indices for y")->capture_default_str();
  embed->add_option("--screen-gamma", screen_gamma_text, "eigenvector indices for screening")->capture_default_str();
  embed->add_option("--k", cfg.k_screen, "screening neighbor count")->capture_default_str();
  embed->add_option("--out", embed_out, "artifact directory")->required();
  embed->add_flag("--skip-screening", cfg.skip_screening);
  embed->add_flag("--noise-check", cfg.noise_check);
  embed->add_option("--seed", cfg.seed)->capture_default_str();
  embed->callback([&] {
    action = [&] {
      cfg.omega = parse_omega(omega_text, cfg.auto_omega);
      cfg.gamma1 = parse_index_list(gamma1_text);
      cfg.gamma2 = parse_index_list(gamma2_text);
      cfg.screen_gamma = parse_index_list(screen_gamma_text);
      auto [x, y] = embed_in.load();
      duo::RunResult r = duo::run(x, y, cfg);
      duo::write_run_artifacts(embed_out, cfg, r);
      std::cout << duo::to_string(r.status) << '\n';
      switch (r.status) {
        case duo::RunStatus::embedded: return 0;
        case duo::RunStatus::stopped_not_alignable: return kExitNotAlignable;
        case duo::RunStatus::stopped_noise_dominated: return kExitNoise;
      }
      return kExitError;
    };
  });

  // screen
  auto* screen = app.add_subcommand("screen", "alignability screening only");
  Inputs screen_in;
  double screen_omega = duo::kDefaultOmega;
  int screen_k = duo::kDefaultScreenK;
  std::string screen_gamma = "1-10", screen_out;
  screen_in.add(screen);
  screen->add_option("--omega", screen_omega)->capture_default_str();
  screen->add_option("--k", screen_k)->capture_default_str();
  screen->add_option("--gamma", screen_gamma)->capture_default_str();
  screen->add_option("--out", screen_out, "report JSON path ('-' for stdout)");
  screen->callback([&] {
    action = [&] {
      auto [x, y] = screen_in.load();
      auto rep = duo::screen_alignability(x, y, screen_omega, screen_k, parse_index_list(screen_gamma));
      emit_json(screen_out, rep);
      return rep.alignable ? 0 : kExitNotAlignable;
    };
  });

  // noise-check
  auto* noise = app.add_subcommand("noise-check", "bulk-spectrum noise-regime detector");
  Inputs noise_in;
  double noise_omega = duo::kDefaultOmega, c1 = duo::kDefaultC1, c2 = duo::kDefaultC2;
  int k_skip = duo::kDefaultKSkip;
  std::string scaling = "calibrated", noise_out;
  noise_in.add(noise);
  noise->add_option("--omega", noise_omega)->capture_default_str();
  noise->add_option("--k-skip", k_skip)->capture_default_str();
  noise->add_option("--c1", c1)->capture_default_str();
  noise->add_option("--c2", c2)->capture_default_str();
  noise->add_option("--scaling", scaling, "calibrated or plain (sqrt(n1 n2)/p)")
      ->check(CLI::IsMember({"calibrated", "plain"}))
      ->capture_default_str();
  noise->add_option("--out", noise_out, "report JSON path ('-' for stdout)");
  noise->callback([&] {
    action = [&] {
      auto [x, y] = noise_in.load();
      auto bw = duo::select_bandwidth(duo::cross_sq_distances(x, y), noise_omega);
      auto k = duo::build_duo_kernel(duo::cross_sq_distances(x, y), bw);
      Eigen::VectorXd w = scaling == "plain" ? duo::scaled_bulk_eigenvalues(k, x.p())
                                             : duo::calibrated_bulk_eigenvalues(k, x, y);
      auto rep = duo::detect_noise_regime(w, k_skip, c1, c2);
      emit_json(noise_out, rep);
      return rep.noise_dominated ? kExitNoise : 0;
    };
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "write a simulated dataset pair");
  std::string setting, kind = "klein_vs_line", sim_out;
  duo::Index n1 = 600, n2 = 600, p = 800;
  double tau = 0.0;
  std::optional<double> s1, s2;
  std::uint64_t sim_seed = 0;
  sim->add_option("--setting", setting)->required()->check(
      CLI::IsMember({"1", "2", "torus", "noise", "negcontrol"}));
  sim->add_option("--kind", kind, "negative control kind")
      ->check(CLI::IsMember({"klein_vs_line", "torus_vs_noise"}))
      ->capture_default_str();
  sim->add_option("--n1", n1)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--n2", n2)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--p", p)->check(CLI::PositiveNumber)->capture_default_str();
  sim->add_option("--tau", tau)->capture_default_str();
  sim->add_option("--sigma1-sq", s1);
  sim->add_option("--sigma2-sq", s2);
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--out", sim_out)->required();
  sim->callback([&] {
    action = [&] {
      // generator preconditions (p < 25, unknown kind, ...) are flag errors
      try {
        return simulate();
      } catch (const duo::ShapeError& e) {
        throw UsageError(e.what());
      } catch (const duo::DomainError& e) {
        throw UsageError(e.what());
      } catch (const duo::UnsupportedKind& e) {
        throw UsageError(e.what());
      }
    };
  });
  simulate = [&] {
    std::filesystem::create_directories(sim_out);
    std::filesystem::path dir = sim_out;
    nlohmann::json meta = {{"setting", setting}, {"n1", n1}, {"n2", n2}, {"seed", sim_seed}};
    if (setting == "1" || setting == "2") {
      double v1 = s1.value_or(0.25), v2 = s2.value_or(1.0);
      auto pair = setting == "1" ? duo::sample_setting1(n1, n2, p, tau, v1, v2, sim_seed)
                                 : duo::sample_setting2(n1, n2, p, tau, v1, v2, sim_seed);
      duo::save_csv(dir / "x.csv", pair.x);
      duo::save_csv(dir / "y.csv", pair.y);
      duo::save_labels(dir / "labels_x.csv", pair.labels_x);
      duo::save_labels(dir / "labels_y.csv", pair.labels_y);
      meta.update({{"p", p}, {"tau", tau}, {"sigma1_sq", v1}, {"sigma2_sq", v2}});
    } else if (setting == "torus") {
      double v1 = s1.value_or(0.16), v2 = s2.value_or(1.0);
      auto pair = duo::sample_torus_pair(n1, n2, p, v1, v2, sim_seed);
      duo::save_csv(dir / "x.csv", pair.x);
      duo::save_csv(dir / "y.csv", pair.y);
      duo::save_csv(dir / "y_clean.csv", pair.y_clean);
      meta.update({{"p", p}, {"sigma1_sq", v1}, {"sigma2_sq", v2}, {"theta", pair.theta}});
    } else if (setting == "noise") {
      double v1 = s1.value_or(1.0), v2 = s2.value_or(1.0);
      auto pair = duo::sample_pure_noise_pair(n1, n2, p, v1, v2, sim_seed);
      duo::save_csv(dir / "x.csv", pair.x);
      duo::save_csv(dir / "y.csv", pair.y);
      meta.update({{"p", p}, {"sigma1_sq", v1}, {"sigma2_sq", v2}});
    } else {
      auto pair = duo::sample_negative_control(duo::parse_negative_control(kind), n1, n2, sim_seed);
      duo::save_csv(dir / "x.csv", pair.x);
      duo::save_csv(dir / "y.csv", pair.y);
      meta["kind"] = kind;
    }
    duo::write_json(dir / "meta.json", meta);
    return 0;
  };

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "score embeddings against labels or clean signals");
  std::string metric = "rand", emb_x, lab_x, emb_y, lab_y, method = "kmeans", clean, eval_out;
  int clusters = 0, jac_k = duo::kDefaultJaccardK;
  bool eval_header = false;
  std::uint64_t eval_seed = 0;
  eval->add_option("--metric", metric)->check(CLI::IsMember({"rand", "jaccard"}))->capture_default_str();
  eval->add_option("--embedding-x,--embedding", emb_x, "embedding CSV (x side)")->required();
  eval->add_option("--labels-x,--labels", lab_x, "true labels for the x embedding");
  eval->add_option("--embedding-y", emb_y);
  eval->add_option("--labels-y", lab_y);
  eval->add_option("--method", method)->check(CLI::IsMember({"kmeans", "hierarchical"}))->capture_default_str();
  eval->add_option("--clusters", clusters, "cluster count (default: number of true labels)");
  eval->add_option("--clean", clean, "clean-signal CSV for jaccard");
  eval->add_option("--k", jac_k)->capture_default_str();
  eval->add_flag("--header", eval_header, "embedding CSVs start with a header row");
  eval->add_option("--seed", eval_seed)->capture_default_str();
  eval->add_option("--out", eval_out, "report JSON path ('-' for stdout)");
  eval->callback([&] {
    action = [&] {
      if (metric == "jaccard") {
        if (clean.empty()) throw UsageError("--clean is required for jaccard");
        auto e = duo::load_csv(emb_x, eval_header);
        auto c = duo::load_csv(clean, eval_header);
        emit_json(eval_out, duo::MetricReport{"jaccard_concordance",
                                              duo::jaccard_concordance(e.values(), c, jac_k), {}});
        return 0;
      }
      if (lab_x.empty()) throw UsageError("--labels-x is required for rand");
      if (emb_y.empty() != lab_y.empty()) throw UsageError("--embedding-y and --labels-y go together");
      auto cluster = [&](const std::string& emb, const std::string& lab, std::uint64_t seed) {
        auto e = duo::load_csv(emb, eval_header);
        auto truth = duo::LabeledPartition::from_labels(duo::load_labels(lab));
        if (truth.n() != e.n()) throw duo::ShapeError("label count does not match embedding rows");
        int k = clusters > 0 ? clusters : truth.k();
        auto est = method == "kmeans" ? duo::kmeans(e.values(), k, seed)
                                      : duo::hierarchical_cluster(e.values(), k);
        return std::make_pair(est, truth);
      };
      auto [ex, tx] = cluster(emb_x, lab_x, duo::rng::derive_seed(eval_seed, 0));
      if (emb_y.empty()) {
        emit_json(eval_out, duo::MetricReport{"rand_index", duo::rand_index(ex, tx), {}});
        return 0;
      }
      auto [ey, ty] = cluster(emb_y, lab_y, duo::rng::derive_seed(eval_seed, 1));
      emit_json(eval_out, duo::overall_rand(ex, tx, ey, ty));
      return 0;
    };
  });

  // bench
  auto* bench = app.add_subcommand("bench", "simulation study loop for prop, pca and j-pca");
  std::string task = "clustering", tau_grid = "0,1,2,3", n_grid = "600", bench_out;
  int reps = 20, bench_setting = 1;
  duo::Index bn1 = 600, bn2 = 600, bp = 800;
  std::uint64_t bench_seed = 0;
  bench->add_option("--task", task)->check(CLI::IsMember({"clustering", "manifold"}))->capture_default_str();
  bench->add_option("--reps", reps)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--tau-grid", tau_grid)->capture_default_str();
  bench->add_option("--n-grid", n_grid, "sample sizes for the manifold task")->capture_default_str();
  bench->add_option("--setting", bench_setting)->check(CLI::IsMember({1, 2}))->capture_default_str();
  bench->add_option("--n1", bn1)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--n2", bn2)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--p", bp)->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", bench_seed)->capture_default_str();
  bench->add_option("--out", bench_out)->required();
  bench->callback([&] {
    action = [&] {
      std::vector<double> grid = parse_real_list(task == "clustering" ? tau_grid : n_grid);
      std::vector<duo::BenchRow> rows;
      std::mutex mu;
      const auto cells = static_cast<std::int64_t>(grid.size()) * reps;
      duo::parallel_for(
          cells,
          [&](std::int64_t begin, std::int64_t end) {
            for (std::int64_t c = begin; c < end; ++c) {
              double g = grid[static_cast<std::size_t>(c / reps)];
              int rep = static_cast<int>(c % reps);
              std::uint64_t seed = duo::rng::derive_seed(bench_seed, static_cast<std::uint64_t>(c));
              duo::MethodScores s;
              std::string metric_name;
              if (task == "clustering") {
                duo::ClusteringStudy st;
                st.setting = bench_setting;
                st.n1 = bn1;
                st.n2 = bn2;
                st.p = bp;
                s = duo::clustering_replicate(st, g, seed);
                metric_name = "rand_index";
              } else {
                duo::ManifoldStudy st;
                st.n1 = st.n2 = static_cast<duo::Index>(g);
                st.p = bp;
                s = duo::manifold_replicate(st, seed);
                metric_name = "jaccard_concordance";
              }
              std::lock_guard lock(mu);
              rows.push_back({"prop", g, rep, metric_name, s.prop});
              rows.push_back({"pca", g, rep, metric_name, s.pca});
              rows.push_back({"j-pca", g, rep, metric_name, s.jpca});
            }
          },
          1);
      duo::sort_rows(rows);
      std::filesystem::create_directories(bench_out);
      duo::write_bench_csv(std::filesystem::path(bench_out) / "results.csv", rows);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    auto subs = app.get_subcommands();
    std::cerr << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const duo::ConfigError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const duo::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
