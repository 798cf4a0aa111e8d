// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "cli.hpp"

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dataworth/corpus.hpp"
#include "dataworth/errors.hpp"
#include "dataworth/json_io.hpp"
#include "dataworth/service.hpp"

namespace dataworth::cli {

namespace {

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\t' || c == '\r') c = ' ';
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  err << "error\t" << kind << '\t' << one_line(message) << '\n';
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Answers from an answers file, or from a replay table (.tsv) with its
/// printed row scores.
struct LoadedAnswers {
  Catalog catalog;
  ResponseSet responses;
  ScoreOverrides overrides;
  bool replay = false;
};

class Context {
 public:
  explicit Context(const CliConfig& config) : config_(config) {}

  const Catalog& catalog() {
    if (!catalog_) catalog_ = config_.catalog ? Catalog::load_extended(*config_.catalog) : Catalog::load_canonical();
    return *catalog_;
  }

  WeightProfile weights(const Catalog& catalog) {
    WeightProfile p = config_.weights ? read_weights(*config_.weights) : WeightProfile{};
    if (config_.mode) {
      const auto m = parse_aggregation_mode(*config_.mode);
      if (!m) throw ValidationError("unknown mode '" + *config_.mode + "' (expected raw or normalized)");
      p.mode = *m;
    }
    validate_profile(catalog, p);
    return p;
  }

  LoadedAnswers answers(const std::filesystem::path& path) {
    if (ends_with(path.string(), ".tsv")) {
      ReplayFixture fx = from_replay_table(catalog(), path);
      return LoadedAnswers{fx.catalog, fx.responses, fx.expected_scores, true};
    }
    return LoadedAnswers{catalog(), read_answers(catalog(), path), {}, false};
  }

  ValueReport score(const LoadedAnswers& a) {
    return compute_value(a.catalog, a.responses, weights(a.catalog), a.replay ? &a.overrides : nullptr);
  }

  ProfileOptions profile_options() const {
    ProfileOptions o;
    o.sample_rows = config_.sample_rows;
    if (config_.rulepack) o.rulepack = read_rulepack(*config_.rulepack);
    return o;
  }

  RenderSpec spec() const { return RenderSpec{config_.format, config_.verbosity, config_.provenance}; }
  unsigned threads() const {
    if (config_.threads) return config_.threads;
    return std::max(1u, std::thread::hardware_concurrency());
  }

 private:
  const CliConfig& config_;
  std::optional<Catalog> catalog_;
};

/// Runs `f` over `items` on up to `threads` workers; results keep input order.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, unsigned threads, F f) {
  using R = decltype(f(items.front()));
  std::vector<R> out;
  out.reserve(items.size());
  for (std::size_t start = 0; start < items.size(); start += threads) {
    std::vector<std::future<R>> batch;
    for (std::size_t i = start; i < std::min(items.size(), start + threads); ++i) {
      batch.push_back(std::async(std::launch::async, f, std::cref(items[i])));
    }
    for (auto& fut : batch) out.push_back(fut.get());
  }
  return out;
}

std::string render_catalog(const Catalog& c, const RenderSpec& spec) {
  if (spec.format == RenderFormat::machine) return to_json(c).dump(2) + "\n";
  const bool md = spec.format == RenderFormat::markdown;
  std::ostringstream out;
  out << (md ? "# " : "") << "Catalog " << c.version().tag() << "\n";
  out << (md ? "\n" : "") << c.version().checksum << "\n";
  for (const auto& f : c.facets()) {
    out << '\n' << (md ? "## " : "") << f.title << " (" << f.id << ")\n";
    if (md) out << '\n';
    for (const auto& qid : f.question_ids) {
      const QuestionSpec& q = c.lookup(qid);
      out << (md ? "- `" : "  ") << q.id << (md ? "` " : "  ") << q.prompt << "\n";
      std::string scores;
      for (const auto& [label, score] : q.score_rule.map) {
        if (!scores.empty()) scores += ", ";
        scores += label + "=" + format_score(score);
      }
      if (q.score_rule.numeric_passthrough) scores += scores.empty() ? "numeric" : ", numeric";
      out << (md ? "  - " : "      ") << scores << "\n";
    }
  }
  return out.str();
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("--set expects question_id=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation:
    case ErrorKind::not_found:
      return kValidation;
    case ErrorKind::io:
    case ErrorKind::parse:
      return kIoOrParse;
    case ErrorKind::internal:
      break;
  }
  return kInternal;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig config;
  CLI::App app{"Dataset valuation: profile files, score answers, compare, and study corpora.", "dataworth"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string catalog_path, weights_path, rulepack_path, format_text = "human_table";
  app.add_option("--catalog", catalog_path, "Extension catalog file")->envname("DATAWORTH_CATALOG");
  app.add_option("--weights", weights_path, "Weight profile file");
  app.add_option("--mode", config.mode, "Aggregation: raw or normalized");
  app.add_option("--format", format_text, "machine | human_table | markdown")->capture_default_str();
  app.add_option("--rulepack", rulepack_path, "Sensitivity rule pack");
  app.add_option("--sample-rows", config.sample_rows, "Rows read in full before sampling")->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads for profile and corpus scan");
  app.add_flag("-v,--verbose", config.verbosity, "Subtotals and weight columns");
  app.add_flag("--provenance", config.provenance, "Show where each answer came from");

  std::vector<std::string> profile_paths;
  std::string answers_out;
  bool no_answers = false;
  auto* profile = app.add_subcommand("profile", "Profile data files and draft answers for them");
  profile->add_option("paths", profile_paths, "Data files")->required();
  profile->add_option("--answers-out", answers_out, "Directory for <file>.answers.yaml (default: current)");
  profile->add_flag("--no-answers", no_answers, "Do not write answers files");

  std::string answers_path;
  auto* score = app.add_subcommand("score", "Score an answers file");
  score->add_option("--answers,answers", answers_path, "Answers file or replay table")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Check an answers file against the catalog");
  validate_cmd->add_option("--answers,answers", answers_path, "Answers file")->required();

  std::vector<std::string> compare_paths;
  auto* compare_cmd = app.add_subcommand("compare", "Compare two or more answer sets");
  compare_cmd->add_option("answers", compare_paths, "Answers files or replay tables")->required()->expected(2, -1);

  std::vector<std::string> sets;
  auto* whatif = app.add_subcommand("whatif", "Score hypothetical changes to an answer set");
  whatif->add_option("--answers,answers", answers_path, "Answers file or replay table")->required();
  whatif->add_option("--set", sets, "question_id=value, applied in order")->required();

  std::vector<std::string> replay_paths;
  auto* replay = app.add_subcommand("replay", "Recompute worked scoring tables; exit 0 iff totals match");
  replay->add_option("fixtures", replay_paths, "Replay tables")->required();

  auto* corpus = app.add_subcommand("corpus", "Descriptor corpora");
  corpus->require_subcommand(1);
  std::vector<std::string> descriptor_paths;
  std::string tsv_out, overrides_path;
  auto* scan = corpus->add_subcommand("scan", "Tabulate dimension distributions");
  scan->add_option("descriptors", descriptor_paths, "Descriptor files")->required();
  scan->add_option("--tsv", tsv_out, "Also write a plot-ready TSV here");
  auto* rank = corpus->add_subcommand("rank", "Derive rank priors from distributions");
  rank->add_option("descriptors", descriptor_paths, "Descriptor files")->required();
  rank->add_option("--overrides", overrides_path, "Manual prior overrides");

  std::string host = "127.0.0.1", store;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--store", store, "Session directory");

  bool as_yaml = false;
  auto* catalog_cmd = app.add_subcommand("catalog", "Show the loaded catalog");
  catalog_cmd->add_flag("--yaml", as_yaml, "Write the catalog file format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    err << app.help();
    return kIoOrParse;
  }

  const auto format = parse_render_format(format_text);
  if (!format) {
    report_error(err, "usage", "unknown format '" + format_text + "'");
    return kIoOrParse;
  }
  config.format = *format;
  if (!catalog_path.empty()) config.catalog = catalog_path;
  if (!weights_path.empty()) config.weights = weights_path;
  if (!rulepack_path.empty()) config.rulepack = rulepack_path;

  Context ctx(config);
  const RenderSpec spec = ctx.spec();
  try {
    if (*profile) {
      const ProfileOptions options = ctx.profile_options();
      const Catalog& catalog = ctx.catalog();
      const auto profiles = parallel_map(profile_paths, ctx.threads(),
                                         [&](const std::string& p) { return profile_file(p, options); });
      std::string doc;
      if (spec.format == RenderFormat::machine && profiles.size() > 1) {
        Json all = Json::array();
        for (const auto& p : profiles) all.push_back(to_json(p));
        doc = all.dump(2) + "\n";
      } else {
        for (std::size_t i = 0; i < profiles.size(); ++i) doc += (i ? "\n" : "") + render_profile(profiles[i], spec);
      }
      if (!no_answers) {
        const std::filesystem::path dir = answers_out.empty() ? std::filesystem::current_path() : std::filesystem::path(answers_out);
        std::filesystem::create_directories(dir);
        for (const auto& p : profiles) {
          const auto target = dir / (std::filesystem::path(p.path).filename().string() + ".answers.yaml");
          std::ofstream f(target, std::ios::binary);
          f << write_answers(auto_fill(p, catalog));
          if (!f) throw IoError("cannot write " + target.string());
        }
      }
      out << doc;
    } else if (*score) {
      out << render_value(ctx.score(ctx.answers(answers_path)), spec);
    } else if (*validate_cmd) {
      const LoadedAnswers a = ctx.answers(answers_path);
      const ValidationReport r = validate(a.catalog, a.responses);
      out << render_validation(r, spec);
      if (!r.valid()) {
        report_error(err, "validation", r.summary());
        return kValidation;
      }
    } else if (*compare_cmd) {
      std::vector<ValueReport> reports;
      for (const auto& p : compare_paths) reports.push_back(ctx.score(ctx.answers(p)));
      out << render_comparison(compare(std::move(reports)), spec);
    } else if (*whatif) {
      const LoadedAnswers a = ctx.answers(answers_path);
      std::vector<Change> changes;
      for (const auto& s : sets) {
        auto [qid, value] = split_assignment(s);
        changes.push_back(Change{qid, value});
      }
      out << render_delta(what_if(a.catalog, a.responses, ctx.weights(a.catalog), changes,
                                  a.replay ? &a.overrides : nullptr),
                          spec);
    } else if (*replay) {
      bool all_match = true;
      std::string doc;
      Json machine_all = Json::array();
      for (std::size_t i = 0; i < replay_paths.size(); ++i) {
        const ReplayVerdict v = replay_check(from_replay_table(ctx.catalog(), replay_paths[i]));
        if (!v.matches_printed) {
          all_match = false;
          report_error(err, "validation",
                       replay_paths[i] + ": engine sum " + format_score(v.engine_sum) +
                           (v.has_printed_total ? " differs from printed total " + format_score(v.printed_total)
                                                : " has no printed total to match"));
        }
        if (spec.format == RenderFormat::machine) {
          machine_all.push_back(to_json(v));
        } else {
          doc += (i ? "\n" : "") + render_replay(v, spec);
        }
      }
      if (spec.format == RenderFormat::machine) {
        doc = (machine_all.size() == 1 ? machine_all[0] : machine_all).dump(2) + "\n";
      }
      out << doc;
      return all_match ? kOk : kValidation;
    } else if (*corpus) {
      std::vector<std::filesystem::path> paths(descriptor_paths.begin(), descriptor_paths.end());
      const Corpus c = ingest(paths, ctx.threads());
      for (const auto& e : c.errors) report_error(err, "ingest", e.path + ": " + e.message);
      const DistributionTable table = tabulate(c);
      if (*scan) {
        if (!tsv_out.empty()) {
          std::ofstream f(tsv_out, std::ios::binary);
          f << distribution_tsv(table);
          if (!f) throw IoError("cannot write " + tsv_out);
        }
        out << render_distribution(table, spec);
      } else {
        const PriorOverrides overrides = overrides_path.empty() ? PriorOverrides{} : read_prior_overrides(overrides_path);
        out << render_rank_prior(derive_rank_prior(table, overrides), spec);
      }
    } else if (*serve) {
      ServiceOptions o;
      o.catalog = ctx.catalog();
      o.weights = ctx.weights(o.catalog);
      o.store_dir = store;
      o.profile_options = ctx.profile_options();
      Service service(std::move(o));
      err << "listening on " << host << ":" << port << '\n';
      if (!service.listen(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
    } else if (*catalog_cmd) {
      out << (as_yaml ? serialize_catalog(ctx.catalog()) : render_catalog(ctx.catalog(), spec));
    }
  } catch (const InvalidResponsesError& e) {
    for (const auto& v : e.report().violations) {
      report_error(err, "validation", v.question_id + ": " + to_string(v.code) + ": " + v.message);
    }
    return kValidation;
  } catch (const Error& e) {
    report_error(err, to_string(e.kind()), e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kInternal;
  }
  return kOk;
}

}  // namespace dataworth::cli
