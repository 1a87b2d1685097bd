// graphlim: sampling, motif densities, spectra, transport distances,
// separation tests, and the classification pipeline from the command line.
// All randomness flows from --seed; repeated runs are byte-identical.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <graphlim/graphlim.hpp>

namespace fs = std::filesystem;

namespace {

graphlim::Motif parse_motif(const std::string& name) {
  if (name == "Edge" || name == "edge" || name == "K2") return graphlim::Motif::edge();
  if (name.size() >= 2) {
    const char head = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
    }
    if (digits && (head == 'C' || head == 'S' || head == 'P')) {
      const int v = std::stoi(name.substr(1));
      if (head == 'C') return graphlim::Motif::cycle(v);
      if (head == 'S') return graphlim::Motif::star(v);
      return graphlim::Motif::path(v);
    }
  }
  throw std::runtime_error("unknown motif \"" + name +
                           "\" (expected Edge, C<m>, S<v>, or P<v>)");
}

std::vector<graphlim::WeightedGraph> load_group(const std::string& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  if (files.empty()) throw std::runtime_error(dir + ": no .json graph files");
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  std::vector<graphlim::WeightedGraph> graphs;
  graphs.reserve(files.size());
  for (const auto& path : files) graphs.push_back(graphlim::load_graph(path.string()));
  return graphs;
}

// mode strings: "spectral" or "motif:<F>"
struct Mode {
  bool spectral = false;
  graphlim::Motif motif = graphlim::Motif::edge();
};

Mode parse_mode(const std::string& mode) {
  Mode out;
  if (mode == "spectral") {
    out.spectral = true;
    return out;
  }
  if (mode.rfind("motif:", 0) == 0) {
    out.motif = parse_motif(mode.substr(6));
    return out;
  }
  throw std::runtime_error("unknown mode \"" + mode + "\" (expected motif:<F> or spectral)");
}

// --channels entries: "channel:kind", a bare kind (single-channel datasets),
// or a bare channel name (adjacency spectrum).
graphlim::FeatureConfig parse_feature_config(const graphlim::Dataset& ds,
                                             const std::vector<std::string>& entries, int r,
                                             bool abs_order) {
  const std::vector<std::string> names = ds.channel_names();
  graphlim::FeatureConfig config;
  config.r = r;
  config.abs_order = abs_order;
  for (const auto& entry : entries) {
    graphlim::FeaturePair pair;
    const std::size_t colon = entry.find(':');
    if (colon != std::string::npos) {
      pair.channel = entry.substr(0, colon);
      pair.kind = graphlim::spectrum_kind_from_name(entry.substr(colon + 1));
    } else if (entry == "adjacency" || entry == "laplacian" || entry == "degree") {
      if (names.size() != 1) {
        throw std::runtime_error("channel entry \"" + entry +
                                 "\" names a spectrum kind without a channel, but the dataset "
                                 "has " +
                                 std::to_string(names.size()) + " channels");
      }
      pair.channel = names.front();
      pair.kind = graphlim::spectrum_kind_from_name(entry);
    } else {
      pair.channel = entry;
      pair.kind = graphlim::SpectrumKind::adjacency;
    }
    if (std::find(names.begin(), names.end(), pair.channel) == names.end()) {
      throw std::runtime_error("dataset has no channel \"" + pair.channel + "\"");
    }
    config.pairs.push_back(std::move(pair));
  }
  if (config.pairs.empty()) throw std::runtime_error("no feature channels given");
  return config;
}

std::string zero_pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-graph population analysis: graphon sampling, motif densities, "
               "spectra, transport distances, separation tests, classification"};
  app.require_subcommand(1);
  int exit_code = 0;

  // sample
  std::string sample_graphon, sample_out;
  int sample_k = 0, sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "sample graphs from a (decorated) graphon");
  sample->add_option("--graphon", sample_graphon, "graphon JSON file")->required();
  sample->add_option("--k", sample_k, "nodes per sampled graph")->required();
  sample->add_option("--n", sample_n, "number of graphs")->required();
  sample->add_option("--seed", sample_seed, "RNG seed");
  sample->add_option("--out", sample_out, "output directory")->required();
  sample->callback([&] {
    const graphlim::DecoratedGraphon d = graphlim::load_decorated(sample_graphon);
    if (sample_n < 1) throw std::runtime_error("--n must be positive");
    fs::create_directories(sample_out);
    const int width = std::max<int>(4, static_cast<int>(std::to_string(sample_n - 1).size()));
    for (int i = 0; i < sample_n; ++i) {
      graphlim::Rng rng = graphlim::Rng::derive(sample_seed, static_cast<std::uint64_t>(i));
      const graphlim::WeightedGraph g = graphlim::sample_graph(d, sample_k, rng);
      const fs::path path = fs::path(sample_out) / ("graph_" + zero_pad(i, width) + ".json");
      graphlim::save_graph(g, path.string());
    }
  });

  // motif
  std::string motif_graph, motif_name;
  auto* motif = app.add_subcommand("motif", "homomorphism density of a motif in a graph");
  motif->add_option("--graph", motif_graph, "graph JSON file")->required();
  motif->add_option("--motif", motif_name, "Edge, C<m>, S<v>, or P<v>")->required();
  motif->callback([&] {
    const graphlim::WeightedGraph g = graphlim::load_graph(motif_graph);
    std::cout << graphlim::format_g12(graphlim::motif_density(parse_motif(motif_name), g))
              << "\n";
  });

  // spectrum
  std::string spectrum_graph, spectrum_channel;
  int spectrum_r = 0;
  bool spectrum_abs = false;
  auto* spectrum = app.add_subcommand("spectrum", "spectrum or truncated spectral features");
  spectrum->add_option("--graph", spectrum_graph, "graph JSON file")->required();
  spectrum->add_option("--channel", spectrum_channel, "adjacency, laplacian, or degree")
      ->required();
  spectrum->add_option("--r", spectrum_r, "emit 2r truncated features instead of atoms");
  spectrum->add_flag("--abs-order", spectrum_abs, "truncate by absolute value");
  spectrum->callback([&] {
    const graphlim::WeightedGraph g = graphlim::load_graph(spectrum_graph);
    const graphlim::SpectrumKind kind = graphlim::spectrum_kind_from_name(spectrum_channel);
    const graphlim::PointMeasure measure = graphlim::spectrum(g, kind);
    if (spectrum_r <= 0) {
      std::cout << "value,mass\n";
      for (const auto& atom : measure.atoms) {
        std::cout << graphlim::format_g12(atom.value) << "," << graphlim::format_g12(atom.mass)
                  << "\n";
      }
      return;
    }
    graphlim::FeatureConfig config;
    config.pairs = {{spectrum_channel, kind}};
    config.r = spectrum_r;
    config.abs_order = spectrum_abs;
    const std::vector<std::string> names = graphlim::feature_column_names(config);
    const std::vector<double> values =
        graphlim::truncate_features(measure, spectrum_r, spectrum_abs);
    for (std::size_t i = 0; i < names.size(); ++i) std::cout << (i ? "," : "") << names[i];
    std::cout << "\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      std::cout << (i ? "," : "") << graphlim::format_g12(values[i]);
    }
    std::cout << "\n";
  });

  // distance
  std::string dist_a, dist_b, dist_mode;
  auto* distance = app.add_subcommand(
      "distance", "Wasserstein distance between two groups of sampled graphs");
  distance->add_option("--group-a", dist_a, "directory of graph JSON files")->required();
  distance->add_option("--group-b", dist_b, "directory of graph JSON files")->required();
  distance->add_option("--mode", dist_mode, "motif:<F> or spectral")->required();
  distance->callback([&] {
    const Mode mode = parse_mode(dist_mode);
    const std::vector<graphlim::WeightedGraph> a = load_group(dist_a);
    const std::vector<graphlim::WeightedGraph> b = load_group(dist_b);
    double value;
    if (mode.spectral) {
      value = graphlim::nested_wasserstein(
          graphlim::ensemble_spectra(a, graphlim::SpectrumKind::adjacency),
          graphlim::ensemble_spectra(b, graphlim::SpectrumKind::adjacency));
    } else {
      value = graphlim::wasserstein_1d(graphlim::empirical_density_measure(mode.motif, a),
                                       graphlim::empirical_density_measure(mode.motif, b));
    }
    std::cout << graphlim::format_g12(value) << "\n";
  });

  // test
  std::string test_a, test_b, test_mode;
  double test_c = 1.0, test_threshold = 0.9;
  int test_vmax = 8;
  auto* test = app.add_subcommand(
      "test", "two-group separation test (exit 0 distinct, 3 inconclusive)");
  test->add_option("--group-a", test_a, "directory of graph JSON files")->required();
  test->add_option("--group-b", test_b, "directory of graph JSON files")->required();
  test->add_option("--mode", test_mode, "motif:<F> or spectral")->required();
  test->add_option("--c", test_c, "absolute constant in the confidence expressions");
  test->add_option("--threshold", test_threshold, "confidence required to declare distinct");
  test->add_option("--v-max", test_vmax, "spectral mode: maximum moment order scanned");
  test->callback([&] {
    const Mode mode = parse_mode(test_mode);
    const std::vector<graphlim::WeightedGraph> a = load_group(test_a);
    const std::vector<graphlim::WeightedGraph> b = load_group(test_b);
    const graphlim::SeparationReport report =
        mode.spectral
            ? graphlim::equality_test_spectral(a, b, test_c, test_threshold, test_vmax)
            : graphlim::equality_test_motif(a, b, mode.motif, test_c, test_threshold);
    std::cout << graphlim::report_to_json(report).dump(2) << "\n";
    exit_code = report.distinct() ? 0 : 3;
  });

  // classify
  std::string classify_dataset;
  std::vector<std::string> classify_channels;
  int classify_r = 10, classify_perms = 99;
  double classify_lambda = 0.01;
  std::uint64_t classify_seed = 0;
  bool classify_abs = false;
  auto* classify = app.add_subcommand(
      "classify", "leave-one-out spectral classification with a permutation test");
  classify->add_option("--dataset", classify_dataset, "dataset JSON file")->required();
  classify->add_option("--channels", classify_channels,
                       "comma-separated channel[:kind] or kind entries")
      ->required()
      ->delimiter(',');
  classify->add_option("--r", classify_r, "features per spectrum tail");
  classify->add_option("--lambda", classify_lambda, "l1 penalty");
  classify->add_option("--permutations", classify_perms, "label permutations");
  classify->add_option("--seed", classify_seed, "RNG seed");
  classify->add_flag("--abs-order", classify_abs, "truncate spectra by absolute value");
  classify->callback([&] {
    const graphlim::Dataset ds = graphlim::load_dataset(classify_dataset);
    const graphlim::FeatureConfig config =
        parse_feature_config(ds, classify_channels, classify_r, classify_abs);
    const graphlim::PermutationTestResult result =
        graphlim::permutation_test(ds, config, classify_lambda, classify_perms, classify_seed);
    std::vector<int> predictions;
    graphlim::loocv_accuracy(graphlim::raw_features(ds, config), ds.labels(), classify_lambda,
                             classify_seed, &predictions);
    std::cerr << "fold,id,label,predicted,correct\n";
    for (int i = 0; i < ds.size(); ++i) {
      std::cerr << i << "," << ds.items[i].id << "," << ds.items[i].label << ","
                << predictions[i] << "," << (predictions[i] == ds.items[i].label ? 1 : 0)
                << "\n";
    }
    std::cout << "loocv_accuracy,p_value\n"
              << graphlim::format_g12(result.observed_accuracy) << ","
              << graphlim::format_g12(result.p_value) << "\n";
  });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo bound-validation experiments");
  experiment->require_subcommand(1);

  std::string conc_graphon, conc_motif;
  int conc_k = 0, conc_trials = 200;
  double conc_eps = 0.0;
  std::uint64_t conc_seed = 0;
  auto* concentration = experiment->add_subcommand(
      "concentration", "motif-density deviations vs the concentration bound");
  concentration->add_option("--graphon", conc_graphon, "decorated graphon JSON file")
      ->required();
  concentration->add_option("--motif", conc_motif, "Edge, C<m>, S<v>, or P<v>")->required();
  concentration->add_option("--k", conc_k, "nodes per sampled graph")->required();
  concentration->add_option("--eps", conc_eps, "deviation threshold")->required();
  concentration->add_option("--trials", conc_trials, "number of sampled graphs");
  concentration->add_option("--seed", conc_seed, "RNG seed");
  concentration->callback([&] {
    const graphlim::DecoratedGraphon d = graphlim::load_decorated(conc_graphon);
    const graphlim::ConcentrationReport report = graphlim::concentration_experiment(
        d, parse_motif(conc_motif), conc_k, conc_eps, conc_trials, conc_seed);
    const graphlim::ConcentrationCell& cell = report.cells.front();
    std::cout << "trial,statistic,bound\n";
    for (int i = 0; i < conc_trials; ++i) {
      std::cout << i << "," << graphlim::format_g12(report.statistic[i]) << ","
                << graphlim::format_g12(cell.probability_bound) << "\n";
    }
    std::cout << "summary," << graphlim::format_g12(cell.exceedance_rate) << ","
              << graphlim::format_g12(cell.probability_bound) << "\n";
  });

  int mw_n = 0, mw_trials = 500;
  std::uint64_t mw_seed = 0;
  auto* mean_w = experiment->add_subcommand(
      "mean-wasserstein", "empirical-measure transport cost vs the 3.6462 n^(-1/3) bound");
  mean_w->add_option("--n", mw_n, "points per empirical measure")->required();
  mean_w->add_option("--trials", mw_trials, "number of measures");
  mean_w->add_option("--seed", mw_seed, "RNG seed");
  mean_w->callback([&] {
    const graphlim::MeanWassersteinResult result =
        graphlim::mean_wasserstein_experiment(mw_n, mw_trials, mw_seed);
    std::cout << "trial,statistic,bound\n";
    for (int i = 0; i < mw_trials; ++i) {
      std::cout << i << "," << graphlim::format_g12(result.per_trial[i]) << ","
                << graphlim::format_g12(result.bound) << "\n";
    }
    std::cout << "summary," << graphlim::format_g12(result.mean) << ","
              << graphlim::format_g12(result.bound) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    nlohmann::json err;
    err["error"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return exit_code;
}
