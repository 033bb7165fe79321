#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdembed/bounded.hpp"
#include "pdembed/checks.hpp"
#include "pdembed/diagram.hpp"
#include "pdembed/grid.hpp"
#include "pdembed/injective.hpp"
#include "pdembed/io.hpp"
#include "pdembed/multiscale.hpp"

namespace {

using namespace pdembed;

// Output goes to --output when given, stdout otherwise.
class OutputSink {
public:
  explicit OutputSink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file: " + path);
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
  std::ofstream file_;
};

std::vector<double> resolve_weights(std::vector<double> weights, std::size_t N) {
  if (weights.empty()) {
    weights.assign(N, 1.0 / std::sqrt(static_cast<double>(N)));
  }
  return weights;
}

ScheduleKind parse_kind(const std::string& kind) {
  if (kind == "coarse") return ScheduleKind::coarse;
  if (kind == "uniform") return ScheduleKind::uniform;
  if (kind == "combined") return ScheduleKind::combined;
  throw std::invalid_argument("unknown schedule kind: " + kind);
}

void emit_sparse_row(std::ostream& os, const std::vector<SparseVec>& blocks) {
  bool first = true;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    for (const auto& [key, value] : blocks[k].entries) {
      if (!first) os << " ";
      first = false;
      os << key_string(k + 1, key) << "=" << format_double(value);
    }
  }
  os << "\n";
}

int cmd_embed(const std::string& input, std::size_t n, double frame,
              std::vector<double> scales, std::vector<double> weights,
              bool dense, const std::string& output,
              const std::string& header_out) {
  weights = resolve_weights(std::move(weights), scales.size());
  const auto spec = BoundedEmbeddingSpec::make(frame, std::move(scales),
                                               std::move(weights), n);
  const auto diagrams = read_diagrams(input, n);
  OutputSink sink(output);
  if (dense && !header_out.empty()) {
    std::ofstream hf(header_out);
    if (!hf) throw std::runtime_error("cannot open header file: " + header_out);
    for (const auto& label : phi3_dense_header(spec)) hf << label << "\n";
  }
  for (const Diagram& d : diagrams) {
    if (dense) {
      const auto row = phi3_dense(d, spec);
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) sink.os() << ",";
        sink.os() << format_double(row[i]);
      }
      sink.os() << "\n";
    } else {
      emit_sparse_row(sink.os(), phi3(d, spec));
    }
  }
  return 0;
}

int cmd_dist(const std::string& input, std::size_t n, const std::string& mode,
             double frame, std::vector<double> scales,
             std::vector<double> weights, const std::string& output) {
  const auto diagrams = read_diagrams(input, n);
  OutputSink sink(output);
  const bool want_bottleneck = mode == "bottleneck" || mode == "both";
  const bool want_embedded = mode == "embedded" || mode == "both";
  if (!want_bottleneck && !want_embedded) {
    throw std::invalid_argument("mode must be bottleneck, embedded, or both");
  }
  if (want_bottleneck) {
    sink.os() << "# bottleneck\n";
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      for (std::size_t j = 0; j < diagrams.size(); ++j) {
        if (j) sink.os() << ",";
        sink.os() << format_double(bottleneck_distance(diagrams[i], diagrams[j]));
      }
      sink.os() << "\n";
    }
  }
  if (want_embedded) {
    weights = resolve_weights(std::move(weights), scales.size());
    const auto spec = BoundedEmbeddingSpec::make(frame, std::move(scales),
                                                 std::move(weights), n);
    std::vector<std::vector<SparseVec>> images;
    images.reserve(diagrams.size());
    for (const Diagram& d : diagrams) images.push_back(phi3(d, spec));
    sink.os() << "# embedded\n";
    for (std::size_t i = 0; i < images.size(); ++i) {
      for (std::size_t j = 0; j < images.size(); ++j) {
        if (j) sink.os() << ",";
        sink.os() << format_double(phi3_distance(images[i], images[j]));
      }
      sink.os() << "\n";
    }
  }
  return 0;
}

int cmd_profile(const std::string& kind, std::size_t n, double tmin, double tmax,
                std::size_t steps, double frame, std::vector<double> scales,
                std::vector<double> weights, const std::string& output) {
  OutputSink sink(output);
  if (kind == "bounded") {
    weights = resolve_weights(std::move(weights), scales.size());
    const auto spec = BoundedEmbeddingSpec::make(frame, std::move(scales),
                                                 std::move(weights), n);
    sink.os() << "t,rho_steps,rho_linear,upper_bound\n";
    for (std::size_t i = 0; i <= steps; ++i) {
      const double t = tmin + (tmax - tmin) * static_cast<double>(i) /
                                  static_cast<double>(steps);
      sink.os() << format_double(t) << "," << format_double(rho3_steps(spec, t))
                << "," << format_double(rho3_linear(spec, t)) << ","
                << format_double(t) << "\n";
    }
    return 0;
  }
  const ScaleSchedule s(parse_kind(kind), n);
  sink.os() << "t,rho_minus,rho_minus_improved,upper_bound\n";
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t =
        tmin + (tmax - tmin) * static_cast<double>(i) / static_cast<double>(steps);
    sink.os() << format_double(t) << "," << format_double(rho_minus(s, t)) << ","
              << format_double(rho_minus_improved(s, t)) << ","
              << format_double(t) << "\n";
  }
  return 0;
}

int cmd_spec(std::size_t n, double frame, std::vector<double> scales,
             std::vector<double> weights, const std::string& output) {
  weights = resolve_weights(std::move(weights), scales.size());
  const auto spec = BoundedEmbeddingSpec::make(frame, std::move(scales),
                                               std::move(weights), n);
  OutputSink sink(output);
  sink.os() << "scale_index,R,nu,rho_steps_at_R\n";
  for (std::size_t i = 0; i < spec.scales.size(); ++i) {
    const double R = spec.scales[i];
    sink.os() << (i + 1) << "," << format_double(R) << ","
              << count_landmarks(R, spec.frame, spec.arity) << ","
              << format_double(rho3_steps(spec, R)) << "\n";
  }
  const double t_probe = std::min(spec.frame, spec.scales.front() * 2);
  if (t_probe > spec.scales.front()) {
    const double slope =
        rho3_linear(spec, t_probe) / (t_probe - spec.scales.front());
    sink.os() << "linear_slope," << format_double(slope) << "\n";
  }
  return 0;
}

int cmd_witness(std::size_t n, double frame, std::vector<double> scales,
                std::vector<double> weights, const std::string& output) {
  weights = resolve_weights(std::move(weights), scales.size());
  const auto spec = BoundedEmbeddingSpec::make(frame, std::move(scales),
                                               std::move(weights), n);
  const auto [x, y] = non_injectivity_witness(spec);
  OutputSink sink(output);
  write_diagrams_csv(sink.os(), {x, y});
  sink.os() << "\nbottleneck," << format_double(bottleneck_distance(x, y)) << "\n";
  sink.os() << "embedded," << format_double(phi3_distance(phi3(x, spec), phi3(y, spec)))
            << "\n";
  return 0;
}

int cmd_inject(const std::string& input, std::size_t n, double frame,
               std::vector<double> anchor_values, const std::string& output) {
  const AnchorSet anchors = anchor_values.empty()
                                ? AnchorSet::defaults(frame, n)
                                : AnchorSet::make(std::move(anchor_values));
  const auto diagrams = read_diagrams(input, n);
  OutputSink sink(output);
  for (const Diagram& d : diagrams) {
    const auto vec = injective_embed(d, anchors, frame);
    for (std::size_t i = 0; i < vec.size(); ++i) {
      if (i) sink.os() << ",";
      sink.os() << format_double(vec[i]);
    }
    sink.os() << "\n";
  }
  return 0;
}

int cmd_reconstruct(const std::string& input, std::size_t n, double frame,
                    std::vector<double> anchor_values, double tau,
                    const std::string& output) {
  const AnchorSet anchors = anchor_values.empty()
                                ? AnchorSet::defaults(frame, n)
                                : AnchorSet::make(std::move(anchor_values));
  std::ifstream f(input);
  if (!f) throw std::runtime_error("cannot open input file: " + input);
  std::vector<Diagram> diagrams;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<double> vec;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const auto comma = line.find(',', pos);
      const std::string tok =
          line.substr(pos, comma == std::string::npos ? std::string::npos
                                                      : comma - pos);
      vec.push_back(std::stod(tok));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    diagrams.push_back(reconstruct(vec, anchors, n, frame, tau));
  }
  OutputSink sink(output);
  write_diagrams_csv(sink.os(), diagrams);
  return 0;
}

int cmd_check(const std::string& suite, const CheckConfig& config,
              const std::string& json_path, const std::string& output) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = check_names();
  } else {
    std::size_t pos = 0;
    while (pos <= suite.size()) {
      const auto comma = suite.find(',', pos);
      names.push_back(suite.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  const auto reports = run_checks(names, config);
  OutputSink sink(output);
  sink.os() << "check,samples,worst_margin,pass,seed\n";
  bool all_pass = true;
  for (const CheckReport& r : reports) {
    sink.os() << r.name << "," << r.samples << "," << format_double(r.worst_margin)
              << "," << (r.pass ? "pass" : "FAIL") << "," << r.seed << "\n";
    all_pass = all_pass && r.pass;
  }
  if (!json_path.empty()) {
    nlohmann::json j = nlohmann::json::array();
    for (const CheckReport& r : reports) {
      j.push_back({{"check", r.name},
                   {"samples", r.samples},
                   {"worst_margin", r.worst_margin},
                   {"pass", r.pass},
                   {"seed", r.seed}});
    }
    std::ofstream jf(json_path);
    if (!jf) throw std::runtime_error("cannot open JSON report file: " + json_path);
    jf << j.dump(2) << "\n";
  }
  return all_pass ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz embeddings of persistence diagrams with certified distortion"};
  app.require_subcommand(1);

  std::string input, output, header_out, json_path;
  std::size_t n = 2;
  double frame = 10.0;
  std::vector<double> scales, weights, anchor_values;
  bool dense = false;
  std::string mode = "bottleneck";
  std::string kind = "coarse";
  double tmin = 0, tmax = 10;
  std::size_t steps = 100;
  double tau = 1e-9;
  std::string suite = "all";
  CheckConfig config;

  auto* embed = app.add_subcommand("embed", "Embed diagrams with phi_3");
  embed->add_option("--input", input)->required();
  embed->add_option("--n", n)->required();
  embed->add_option("--frame", frame)->required();
  embed->add_option("--scales", scales)->required()->delimiter(',');
  embed->add_option("--weights", weights)->delimiter(',');
  embed->add_flag("--dense", dense);
  embed->add_option("--output", output);
  embed->add_option("--header-out", header_out);

  auto* dist = app.add_subcommand("dist", "Pairwise distance matrices");
  dist->add_option("--input", input)->required();
  dist->add_option("--n", n)->required();
  dist->add_option("--mode", mode)->check(CLI::IsMember({"bottleneck", "embedded", "both"}));
  dist->add_option("--frame", frame);
  dist->add_option("--scales", scales)->delimiter(',');
  dist->add_option("--weights", weights)->delimiter(',');
  dist->add_option("--output", output);

  auto* profile = app.add_subcommand("profile", "Distortion function tables");
  profile->add_option("--kind", kind)
      ->check(CLI::IsMember({"coarse", "uniform", "combined", "bounded"}));
  profile->add_option("--n", n);
  profile->add_option("--tmin", tmin);
  profile->add_option("--tmax", tmax);
  profile->add_option("--steps", steps);
  profile->add_option("--frame", frame);
  profile->add_option("--scales", scales)->delimiter(',');
  profile->add_option("--weights", weights)->delimiter(',');
  profile->add_option("--output", output);

  auto* specCmd = app.add_subcommand("spec", "Landmark counts and distortion tables");
  specCmd->add_option("--n", n)->required();
  specCmd->add_option("--frame", frame)->required();
  specCmd->add_option("--scales", scales)->required()->delimiter(',');
  specCmd->add_option("--weights", weights)->delimiter(',');
  specCmd->add_option("--output", output);

  auto* witness = app.add_subcommand("witness", "Non-injectivity witness pair");
  witness->add_option("--n", n)->required();
  witness->add_option("--frame", frame)->required();
  witness->add_option("--scales", scales)->required()->delimiter(',');
  witness->add_option("--weights", weights)->delimiter(',');
  witness->add_option("--output", output);

  auto* inject = app.add_subcommand("inject", "Injective angle-coordinate embedding");
  inject->add_option("--input", input)->required();
  inject->add_option("--n", n)->required();
  inject->add_option("--frame", frame)->required();
  inject->add_option("--anchors", anchor_values)->delimiter(',');
  inject->add_option("--output", output);

  auto* rec = app.add_subcommand("reconstruct", "Invert the injective embedding");
  rec->add_option("--input", input)->required();
  rec->add_option("--n", n)->required();
  rec->add_option("--frame", frame)->required();
  rec->add_option("--anchors", anchor_values)->delimiter(',');
  rec->add_option("--tau", tau);
  rec->add_option("--output", output);

  auto* check = app.add_subcommand("check", "Property-check harness");
  check->add_option("--suite", suite);
  check->add_option("--n", config.arity);
  check->add_option("--samples", config.samples);
  check->add_option("--seed", config.seed);
  check->add_option("--frame", config.frame);
  check->add_option("--tolerance", config.tolerance);
  check->add_option("--json", json_path);
  check->add_option("--output", output);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*embed) return cmd_embed(input, n, frame, scales, weights, dense, output, header_out);
    if (*dist) return cmd_dist(input, n, mode, frame, scales, weights, output);
    if (*profile) return cmd_profile(kind, n, tmin, tmax, steps, frame, scales, weights, output);
    if (*specCmd) return cmd_spec(n, frame, scales, weights, output);
    if (*witness) return cmd_witness(n, frame, scales, weights, output);
    if (*inject) return cmd_inject(input, n, frame, anchor_values, output);
    if (*rec) return cmd_reconstruct(input, n, frame, anchor_values, tau, output);
    if (*check) return cmd_check(suite, config, json_path, output);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
