#pragma once

// Command-line front end. Kept in a header so the test suite can drive every
// subcommand in-process; expsum_main.cpp only forwards argv.

#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "expsum/expsum.hpp"

namespace expsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitReproductionFailed = 1;
inline constexpr int kExitUsage = 2;

// Tolerance of the reproduction check, relative to max|y|.
inline constexpr double kReproductionTolerance = 1e-6;

namespace detail {

struct SeriesSource {
  std::string input;
  std::string dataset;
  std::string positional;
  std::optional<double> year_origin;

  void attach(CLI::App& cmd, bool with_positional = true) {
    cmd.add_option("--input", input, "CSV file with a `t,value` or `year,value` header");
    cmd.add_option("--dataset", dataset, "embedded dataset (gdp_hu_table1, gdp_hu_eq1)");
    cmd.add_option("--year-origin", year_origin, "t = year - origin for `year,value` input");
    if (with_positional) cmd.add_option("source", positional, "dataset name or CSV path");
  }

  TimeSeries load() const {
    const int given = !input.empty() + !dataset.empty() + !positional.empty();
    if (given != 1) {
      throw Error(ErrorKind::ParseError, "give exactly one of --input, --dataset or a source");
    }
    if (!dataset.empty()) return load_fixture(dataset);
    if (!input.empty()) return ingest_csv(input, {year_origin});
    for (const auto& f : kFixtures) {
      if (f.name == positional) return load_fixture(positional);
    }
    return ingest_csv(positional, {year_origin});
  }
};

inline void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
  } else {
    write_file(path, content);
  }
}

inline ExponentialModel load_model(const std::string& path) {
  if (path.empty()) throw Error(ErrorKind::ParseError, "--model is required");
  return parse_model_document(read_file(path)).to_model();
}

inline void print_report(const FitReport& report, std::ostream& out) {
  out << "  max |residual|   " << format_short(report.max_abs_residual, 6) << "\n"
      << "  rms residual     " << format_short(report.rms_residual, 6) << "\n"
      << "  max |Im Y|       " << format_short(report.max_imag, 6) << "\n";
  for (const auto& [name, value] : report.losses) {
    out << "  " << std::left << std::setw(17) << ("loss " + name) << std::right
        << format_short(value, 6) << "\n";
  }
}

inline std::string complex_text(Complex z) {
  std::ostringstream ss;
  ss << std::setprecision(15) << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? " - " : " + ")
     << std::abs(z.imag()) << "i";
  return ss.str();
}

inline void print_terms(const ExponentialModel& model, std::ostream& out) {
  for (const auto& term : model.terms()) {
    out << "  (" << complex_text(term.amplitude) << ") exp((" << complex_text(term.exponent)
        << ") t)\n";
  }
}

inline nlohmann::json report_json(const FitReport& report) {
  nlohmann::json j;
  j["max_abs_residual"] = report.max_abs_residual;
  j["rms_residual"] = report.rms_residual;
  j["max_imag"] = report.max_imag;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : report.nodes) {
    j["nodes"].push_back({{"t", n.t}, {"y", n.y}, {"fitted", n.fitted},
                          {"residual", n.residual}, {"imag", n.imag}});
  }
  j["losses"] = nlohmann::json::object();
  for (const auto& [name, value] : report.losses) j["losses"][name] = value;
  return j;
}

inline std::string fit_mode_name(FitMode mode) {
  return mode == FitMode::Exact ? "exact" : "ls";
}

// ---------------------------------------------------------------------------

struct SmoothArgs {
  SeriesSource source;
  std::string output;
  int passes = 1;
};

inline int cmd_smooth(const SmoothArgs& args, std::ostream& out) {
  const auto smoothed = smooth(args.source.load(), {args.passes});
  emit(args.output, series_to_csv(smoothed), out);
  return kExitOk;
}

struct FitArgs {
  SeriesSource source;
  std::string output;
  int terms = 0;
  std::string mode = "exact";
  bool no_symmetrize = false;
};

inline int cmd_fit(const FitArgs& args, std::ostream& out) {
  const auto series = args.source.load();
  const FitOptions options{args.terms, args.mode == "ls" ? FitMode::LeastSquares : FitMode::Exact,
                           !args.no_symmetrize};
  const auto model = fit(series, options);
  const auto report = residual_report(model, series);

  out << "fitted " << model.size() << " terms (" << fit_mode_name(options.mode) << ") to "
      << (series.name().empty() ? "series" : series.name()) << " (" << series.size()
      << " points)\n";
  print_report(report, out);
  out << "terms:\n";
  print_terms(model, out);

  if (!args.output.empty()) {
    const auto doc = ModelDocument::from_model(
        model, {{"source", series.name()},
                {"mode", fit_mode_name(options.mode)},
                {"p", std::to_string(options.terms)},
                {"symmetrize", options.symmetrize ? "true" : "false"}});
    write_file(args.output, serialize_model(doc));
    out << "wrote " << args.output << "\n";
  }
  return kExitOk;
}

struct EvalArgs {
  std::string model;
  std::string output;
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
};

inline int cmd_eval(const EvalArgs& args, std::ostream& out) {
  if (!(args.step > 0.0) || !std::isfinite(args.step)) {
    throw Error(ErrorKind::ParseError, "--step must be positive");
  }
  if (!(args.to >= args.from)) throw Error(ErrorKind::ParseError, "--to must not be below --from");
  const auto model = load_model(args.model);
  const auto count = static_cast<long long>(std::floor((args.to - args.from) / args.step + 1e-9));
  std::string csv = "t,re,im\n";
  for (long long i = 0; i <= count; ++i) {
    const double t = args.from + static_cast<double>(i) * args.step;
    const Complex y = evaluate(model, t);
    csv += format_double(t) + "," + format_double(y.real()) + "," + format_double(y.imag()) + "\n";
  }
  emit(args.output, csv, out);
  return kExitOk;
}

struct ReportArgs {
  SeriesSource source;
  std::string model;
};

inline int cmd_report(const ReportArgs& args, std::ostream& out) {
  const auto model = load_model(args.model);
  const auto report = residual_report(model, args.source.load());
  out << report_json(report).dump(2) << "\n";
  return kExitOk;
}

struct PlotArgs {
  SeriesSource source;
  std::string model;
  std::string output;
};

inline int cmd_plot(const PlotArgs& args, std::ostream& out) {
  const auto model = load_model(args.model);
  const auto series = args.source.load();
  emit(args.output, render_plot_svg(model, series, {.title = series.name()}), out);
  return kExitOk;
}

struct DemoArgs {
  std::string dataset = "gdp_hu_eq1";
  std::string output_dir = ".";
  bool no_smooth = false;
};

inline int cmd_demo(const DemoArgs& args, std::ostream& out) {
  const auto& info = fixture_info(args.dataset);
  auto full = load_fixture(args.dataset);
  constexpr std::size_t kDemoPoints = 30;
  if (full.size() < kDemoPoints) {
    throw Error(ErrorKind::SeriesTooShort, "demo needs at least 30 points");
  }
  // Central 30 points: all of gdp_hu_eq1, t = 2..31 of gdp_hu_table1.
  const auto trim = (full.size() - kDemoPoints) / 2;
  std::vector<DataPoint> central(full.points().begin() + static_cast<std::ptrdiff_t>(trim),
                                 full.points().begin() + static_cast<std::ptrdiff_t>(trim + kDemoPoints));
  const auto series = validate_series(std::move(central), full.name());
  const int p = static_cast<int>(kDemoPoints / 2);
  const double tolerance = kReproductionTolerance * series.max_abs_value();

  out << "Dataset " << info.name << ": " << info.description << "\n";
  out << "Fitting " << p << " complex exponential terms (exact interpolation, "
      << series.size() << " nodes)\n\n";

  std::optional<FitOutcome> outcome;
  try {
    outcome = fit_detailed(series, {p, FitMode::Exact, true});
  } catch (const Error& e) {
    out << "fit failed: " << e.what() << "\n";
    return kExitReproductionFailed;
  }
  const auto& model = outcome->model;
  const auto report = residual_report(model, series);

  out << std::left << std::setw(6) << "Year" << std::setw(13) << "Year number" << std::setw(14)
      << "Tabulated" << std::setw(22) << "Calculated (Re)" << "Im residue\n"
      << std::right;
  for (const auto& node : report.nodes) {
    const int year = info.year_origin + static_cast<int>(std::lround(node.t));
    std::ostringstream calc;
    calc << std::setprecision(16) << node.fitted;
    std::ostringstream im;
    im << std::setprecision(6) << node.imag;
    out << std::left << std::setw(6) << year << std::setw(13) << node.t << std::setw(14)
        << node.y << std::setw(22) << calc.str() << im.str() << "\n" << std::right;
  }
  out << "\nFitted model Y(t):\n";
  print_terms(model, out);

  std::filesystem::create_directories(args.output_dir);
  const auto base = std::filesystem::path(args.output_dir) / std::string(info.name);
  const auto model_path = base.string() + "_model.json";
  const auto svg_path = base.string() + "_fit.svg";
  write_file(model_path, serialize_model(ModelDocument::from_model(
                             model, {{"source", std::string(info.name)},
                                     {"mode", "exact"},
                                     {"p", std::to_string(p)},
                                     {"symmetrize", "true"}})));
  write_file(svg_path, render_plot_svg(model, series, {.title = std::string(info.description)}));
  out << "\nwrote " << model_path << "\nwrote " << svg_path << "\n";

  if (!args.no_smooth) {
    out << "\nTriangle-smoothed series (1 pass, " << series.size() - 2 << " points), "
        << p - 1 << " terms:\n";
    std::optional<FitReport> smoothed_report;
    try {
      const auto smoothed = smooth(series);
      smoothed_report = residual_report(fit(smoothed, {p - 1, FitMode::Exact, true}), smoothed);
    } catch (const Error& e) {
      out << "  smoothed fit failed: " << e.what() << "\n";
    }
    if (smoothed_report) {
      out << std::left << std::setw(20) << "" << std::setw(16) << "original" << "smoothed\n";
      auto row = [&](const std::string& name, double a, double b) {
        out << std::setw(20) << name << std::setw(16) << format_short(a) << format_short(b) << "\n";
      };
      row("max |residual|", report.max_abs_residual, smoothed_report->max_abs_residual);
      row("rms residual", report.rms_residual, smoothed_report->rms_residual);
      row("max |Im Y|", report.max_imag, smoothed_report->max_imag);
      for (const auto& [name, value] : report.losses) {
        row("loss " + name, value, smoothed_report->losses.at(name));
      }
      out << std::right;
    }
  }

  const bool ok = report.max_abs_residual <= tolerance && report.max_imag <= tolerance;
  out << "\nreproduction " << (ok ? "PASSED" : "FAILED") << ": max |residual| "
      << format_short(report.max_abs_residual) << ", max |Im Y| " << format_short(report.max_imag)
      << " (tolerance " << format_short(tolerance) << ")\n";
  return ok ? kExitOk : kExitReproductionFailed;
}

}  // namespace detail

/// Runs one invocation; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Triangle smoothing and complex-exponential fitting of numerical series",
               "expsum"};
  app.require_subcommand(1);

  detail::SmoothArgs smooth_args;
  auto* smooth_cmd = app.add_subcommand("smooth", "triangle-centroid smoothing");
  smooth_args.source.attach(*smooth_cmd);
  smooth_cmd->add_option("--output", smooth_args.output, "output CSV (default stdout)");
  smooth_cmd->add_option("--passes", smooth_args.passes, "number of passes")->default_val(1);

  detail::FitArgs fit_args;
  auto* fit_cmd = app.add_subcommand("fit", "fit a sum of complex exponentials");
  fit_args.source.attach(*fit_cmd);
  fit_cmd->add_option("--terms", fit_args.terms, "number of exponential terms")->required();
  fit_cmd->add_option("--mode", fit_args.mode, "exact | ls")
      ->check(CLI::IsMember({"exact", "ls"}))
      ->default_val("exact");
  fit_cmd->add_option("--output", fit_args.output, "model JSON to write");
  fit_cmd->add_flag("--no-symmetrize", fit_args.no_symmetrize,
                    "keep raw terms instead of exact conjugate pairs");

  detail::EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a model on a grid");
  eval_cmd->add_option("--model", eval_args.model, "model JSON")->required();
  eval_cmd->add_option("--from", eval_args.from, "first t")->required();
  eval_cmd->add_option("--to", eval_args.to, "last t (inclusive)")->required();
  eval_cmd->add_option("--step", eval_args.step, "grid step")->default_val(1.0);
  eval_cmd->add_option("--output", eval_args.output, "output CSV (default stdout)");

  detail::ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "residual report as JSON");
  report_args.source.attach(*report_cmd);
  report_cmd->add_option("--model", report_args.model, "model JSON")->required();

  detail::PlotArgs plot_args;
  auto* plot_cmd = app.add_subcommand("plot", "SVG plot of data and model");
  plot_args.source.attach(*plot_cmd);
  plot_cmd->add_option("--model", plot_args.model, "model JSON")->required();
  plot_cmd->add_option("--output", plot_args.output, "output SVG (default stdout)");

  detail::DemoArgs demo_args;
  auto* demo_cmd = app.add_subcommand("demo", "reproduce the 15-term GDP interpolation");
  demo_cmd->add_option("--dataset", demo_args.dataset, "embedded dataset")
      ->default_val("gdp_hu_eq1");
  demo_cmd->add_option("--output", demo_args.output_dir, "directory for model and SVG")
      ->default_val(".");
  demo_cmd->add_flag("--no-smooth", demo_args.no_smooth, "skip the smoothing comparison");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*smooth_cmd) return detail::cmd_smooth(smooth_args, out);
    if (*fit_cmd) return detail::cmd_fit(fit_args, out);
    if (*eval_cmd) return detail::cmd_eval(eval_args, out);
    if (*report_cmd) return detail::cmd_report(report_args, out);
    if (*plot_cmd) return detail::cmd_plot(plot_args, out);
    if (*demo_cmd) return detail::cmd_demo(demo_args, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace expsum::cli
