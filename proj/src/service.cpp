// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#include "dataworth/service.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <map>
#include <mutex>
#include <random>
#include <shared_mutex>

#include <httplib.h>

#include "dataworth/errors.hpp"
#include "dataworth/json_io.hpp"
#include "dataworth/report.hpp"
#include "yaml_util.hpp"

namespace dataworth {

namespace {

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct HttpError {
  int status;
  std::string kind;
  std::string message;
  std::optional<ValidationReport> violations;
};

Json error_body(const HttpError& e) {
  Json err{{"kind", e.kind}, {"message", e.message}};
  if (e.violations) err["violations"] = to_json(*e.violations)["violations"];
  return {{"error", err}};
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw HttpError{400, "parse", "request body must be a JSON object", std::nullopt};
    return j;
  } catch (const Json::parse_error& e) {
    throw HttpError{400, "parse", std::string("malformed JSON body: ") + e.what(), std::nullopt};
  }
}

std::string string_field(const Json& body, const char* key, bool required = true) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) {
    if (required) throw HttpError{400, "parse", std::string("missing field '") + key + "'", std::nullopt};
    return {};
  }
  if (!it->is_string()) throw HttpError{400, "parse", std::string("field '") + key + "' must be a string", std::nullopt};
  return it->get<std::string>();
}

/// Answer value as text: strings verbatim, numbers in exact form.
std::string answer_text(const Json& v, const std::string& id) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return v.dump();
  throw HttpError{400, "parse", "answer for '" + id + "' must be a string or number", std::nullopt};
}

struct Session {
  std::string id;
  std::string dataset_id;
  Catalog catalog;
  ResponseSet responses;
  WeightProfile weights;
  bool custom_weights = false;
  /// Replay sessions score printed rows until a row is re-answered.
  ScoreOverrides overrides;
  std::string replay_table;
  std::string created, updated;
  mutable std::mutex mu;

  explicit Session(Catalog c) : catalog(std::move(c)) {}

  [[nodiscard]] ValueReport score() const {
    return compute_value(catalog, responses, weights, overrides.empty() ? nullptr : &overrides);
  }
  [[nodiscard]] Json summary() const {
    return {{"session_id", id},
            {"dataset_id", dataset_id},
            {"catalog_version", catalog.version().tag()},
            {"replay", !replay_table.empty()},
            {"weights", to_json(weights)},
            {"created", created},
            {"updated", updated}};
  }
};

}  // namespace

struct Service::Impl {
  ServiceOptions options;
  httplib::Server server;
  mutable std::shared_mutex sessions_mu;
  std::map<std::string, std::shared_ptr<Session>> sessions;
  std::mt19937_64 rng{std::random_device{}()};
  std::mutex rng_mu;
  std::atomic<bool> running{false};

  explicit Impl(ServiceOptions o) : options(std::move(o)) {
    load_store();
    routes();
  }

  // -------------------------------------------------------------------------
  // Store

  std::filesystem::path file_for(const std::string& id, const char* suffix) const {
    return options.store_dir / (id + suffix);
  }

  void save(const Session& s) const {
    if (options.store_dir.empty()) return;
    std::filesystem::create_directories(options.store_dir);
    auto write = [&](const char* suffix, const std::string& text) {
      const auto path = file_for(s.id, suffix);
      const auto tmp = path.string() + ".tmp";
      detail::write_file(tmp, text);
      std::filesystem::rename(tmp, path);
    };
    if (!s.replay_table.empty()) write(".replay.tsv", s.replay_table);
    if (s.custom_weights) write(".weights.yaml", write_weights(s.weights));
    write(".answers.yaml", write_answers(s.responses));
  }

  void load_store() {
    if (options.store_dir.empty() || !std::filesystem::is_directory(options.store_dir)) return;
    for (const auto& e : std::filesystem::directory_iterator(options.store_dir)) {
      const std::string name = e.path().filename().string();
      const std::string suffix = ".answers.yaml";
      if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
        continue;
      }
      const std::string id = name.substr(0, name.size() - suffix.size());
      Catalog catalog = options.catalog;
      ScoreOverrides overrides;
      std::string replay;
      const auto replay_path = file_for(id, ".replay.tsv");
      if (std::filesystem::exists(replay_path)) {
        replay = detail::read_file(replay_path);
        ReplayFixture fx = parse_replay_table(options.catalog, replay, replay_path.string());
        catalog = fx.catalog;
        overrides = fx.expected_scores;
      }
      auto s = std::make_shared<Session>(catalog);
      s->id = id;
      s->responses = read_answers(catalog, e.path());
      s->dataset_id = s->responses.dataset_id;
      s->replay_table = std::move(replay);
      // Rows re-answered after loading no longer carry printed scores.
      for (auto it = overrides.begin(); it != overrides.end();) {
        auto r = s->responses.responses.find(it->first);
        it = r != s->responses.responses.end() && r->second.provenance != Provenance::replay_fixture
                 ? overrides.erase(it)
                 : std::next(it);
      }
      s->overrides = std::move(overrides);
      s->weights = options.weights;
      const auto weights_path = file_for(id, ".weights.yaml");
      if (std::filesystem::exists(weights_path)) {
        s->weights = read_weights(weights_path);
        s->custom_weights = true;
      }
      s->created = s->updated = now_iso8601();
      sessions[id] = s;
    }
  }

  // -------------------------------------------------------------------------
  // Sessions

  std::string new_id() {
    std::lock_guard lock(rng_mu);
    static const char* hex = "0123456789abcdef";
    std::string id;
    for (int i = 0; i < 16; ++i) id.push_back(hex[rng() % 16]);
    return id;
  }

  std::shared_ptr<Session> find(const std::string& id) const {
    std::shared_lock lock(sessions_mu);
    auto it = sessions.find(id);
    if (it == sessions.end()) throw HttpError{404, "not_found", "no session '" + id + "'", std::nullopt};
    return it->second;
  }

  /// Overlay of manual answers from an {id: value | {value, note}} object.
  static ResponseSet overlay_from(const Catalog& catalog, const Json& answers) {
    if (!answers.is_object()) throw HttpError{400, "parse", "'answers' must be an object", std::nullopt};
    ResponseSet overlay;
    for (const auto& [id, v] : answers.items()) {
      std::string text, note;
      if (v.is_object()) {
        text = answer_text(v.contains("value") ? v["value"] : Json(nullptr), id);
        if (v.contains("note") && v["note"].is_string()) note = v["note"].get<std::string>();
      } else {
        text = answer_text(v, id);
      }
      const QuestionSpec* q = catalog.find(id);
      ResponseValue value = q ? interpret_response(*q, text) : ResponseValue::of_label(text);
      overlay.set(Response{id, std::move(value), Provenance::manual, note});
    }
    return overlay;
  }

  Json create_session(const Json& body) {
    Catalog catalog = options.catalog;
    ScoreOverrides overrides;
    ResponseSet responses;
    std::string replay = string_field(body, "replay_table", false);
    std::string dataset = string_field(body, "dataset_id", false);
    if (!replay.empty()) {
      ReplayFixture fx = parse_replay_table(options.catalog, replay, "replay_table");
      catalog = fx.catalog;
      overrides = fx.expected_scores;
      responses = fx.responses;
      if (dataset.empty()) dataset = fx.dataset_id;
    }
    responses.dataset_id = dataset;
    responses.catalog_version = catalog.version().tag();

    auto s = std::make_shared<Session>(catalog);
    s->weights = options.weights;
    if (body.contains("weights") && !body["weights"].is_null()) {
      s->weights = weights_from_json(catalog, body["weights"]);
      s->custom_weights = true;
    }
    if (body.contains("answers") && !body["answers"].is_null()) {
      const ResponseSet overlay = overlay_from(catalog, body["answers"]);
      MergeResult m = merge(catalog, responses, overlay);
      if (!m.report.valid()) throw HttpError{422, "validation", m.report.summary(), m.report};
      for (const auto& [id, r] : overlay.responses) overrides.erase(id);
      responses = std::move(m.merged);
    }
    responses.finalize_omitted(catalog);
    s->dataset_id = dataset;
    s->responses = std::move(responses);
    s->overrides = std::move(overrides);
    s->replay_table = std::move(replay);
    s->created = s->updated = now_iso8601();
    const ValueReport report = s->score();
    {
      std::unique_lock lock(sessions_mu);
      do {
        s->id = new_id();
      } while (sessions.count(s->id));
      sessions[s->id] = s;
    }
    save(*s);
    Json out = s->summary();
    out["score"] = to_json(report);
    return out;
  }

  WeightProfile weights_from_json(const Catalog& catalog, const Json& j) {
    if (!j.is_object()) throw HttpError{400, "parse", "'weights' must be an object", std::nullopt};
    WeightProfile p;
    if (j.contains("mode")) {
      auto mode = parse_aggregation_mode(j["mode"].is_string() ? j["mode"].get<std::string>() : "");
      if (!mode) throw HttpError{400, "parse", "unknown aggregation mode", std::nullopt};
      p.mode = *mode;
    }
    if (j.contains("default_weight")) p.default_weight = rational_from_json(j["default_weight"], "default_weight");
    if (j.contains("renormalize_on_omission")) {
      if (!j["renormalize_on_omission"].is_boolean()) {
        throw HttpError{400, "parse", "'renormalize_on_omission' must be a boolean", std::nullopt};
      }
      p.renormalize_on_omission = j["renormalize_on_omission"].get<bool>();
    }
    if (j.contains("weights")) {
      if (!j["weights"].is_object()) throw HttpError{400, "parse", "'weights.weights' must be an object", std::nullopt};
      for (const auto& [id, w] : j["weights"].items()) p.weights[id] = rational_from_json(w, id);
    }
    validate_profile(catalog, p);
    return p;
  }

  Json put_answers(const std::string& id, const Json& body) {
    auto s = find(id);
    if (!body.contains("answers")) throw HttpError{400, "parse", "missing field 'answers'", std::nullopt};
    std::lock_guard lock(s->mu);
    const ResponseSet overlay = overlay_from(s->catalog, body["answers"]);
    MergeResult m = merge(s->catalog, s->responses, overlay);
    if (!m.report.valid()) throw HttpError{422, "validation", m.report.summary(), m.report};
    m.merged.finalize_omitted(s->catalog);
    ScoreOverrides overrides = s->overrides;
    for (const auto& [qid, r] : overlay.responses) overrides.erase(qid);
    const ValueReport report = compute_value(s->catalog, m.merged, s->weights, overrides.empty() ? nullptr : &overrides);
    s->responses = std::move(m.merged);
    s->overrides = std::move(overrides);
    s->updated = now_iso8601();
    save(*s);
    Json out = s->summary();
    out["score"] = to_json(report);
    return out;
  }

  Json what_if_request(const Json& body) {
    auto s = find(string_field(body, "session_id"));
    std::vector<Change> changes;
    if (body.contains("changes")) {
      if (!body["changes"].is_array()) throw HttpError{400, "parse", "'changes' must be an array", std::nullopt};
      for (const auto& c : body["changes"]) {
        const std::string qid = string_field(c, "question_id");
        changes.push_back(Change{qid, answer_text(c.contains("value") ? c["value"] : Json(nullptr), qid)});
      }
    }
    if (body.contains("set")) {
      if (!body["set"].is_object()) throw HttpError{400, "parse", "'set' must be an object", std::nullopt};
      for (const auto& [qid, v] : body["set"].items()) changes.push_back(Change{qid, answer_text(v, qid)});
    }
    if (changes.empty()) throw HttpError{400, "parse", "no changes given", std::nullopt};
    std::lock_guard lock(s->mu);
    return to_json(what_if(s->catalog, s->responses, s->weights, changes,
                           s->overrides.empty() ? nullptr : &s->overrides));
  }

  Json compare_request(const Json& body) {
    if (!body.contains("session_ids") || !body["session_ids"].is_array()) {
      throw HttpError{400, "parse", "'session_ids' must be an array", std::nullopt};
    }
    std::vector<ValueReport> reports;
    for (const auto& id : body["session_ids"]) {
      if (!id.is_string()) throw HttpError{400, "parse", "session ids must be strings", std::nullopt};
      auto s = find(id.get<std::string>());
      std::lock_guard lock(s->mu);
      reports.push_back(s->score());
    }
    return to_json(compare(std::move(reports)));
  }

  Json profile_request(const Json& body) {
    const std::string path = string_field(body, "path");
    if (!std::filesystem::exists(path)) throw HttpError{404, "not_found", "no file '" + path + "'", std::nullopt};
    const DatasetProfile p = profile_file(path, options.profile_options);
    const ResponseSet answers = auto_fill(p, options.catalog);
    Json out{{"profile", to_json(p)}, {"answers", to_json(answers)}};
    if (body.value("create_session", false)) {
      auto s = std::make_shared<Session>(options.catalog);
      s->weights = options.weights;
      s->dataset_id = string_field(body, "dataset_id", false);
      if (s->dataset_id.empty()) s->dataset_id = answers.dataset_id;
      s->responses = answers;
      s->responses.dataset_id = s->dataset_id;
      s->responses.catalog_version = options.catalog.version().tag();
      s->responses.finalize_omitted(options.catalog);
      s->created = s->updated = now_iso8601();
      {
        std::unique_lock lock(sessions_mu);
        do {
          s->id = new_id();
        } while (sessions.count(s->id));
        sessions[s->id] = s;
      }
      save(*s);
      out["session"] = s->summary();
      out["score"] = to_json(s->score());
    }
    return out;
  }

  // -------------------------------------------------------------------------
  // HTTP plumbing

  /// Runs `f`, which fills `res`, mapping exceptions onto JSON errors.
  template <typename F>
  static void handle(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const HttpError& e) {
      fail(res, e);
    } catch (const InvalidResponsesError& e) {
      fail(res, HttpError{422, "validation", e.what(), e.report()});
    } catch (const ValidationError& e) {
      fail(res, HttpError{422, "validation", e.what(), std::nullopt});
    } catch (const NotFoundError& e) {
      fail(res, HttpError{404, "not_found", e.what(), std::nullopt});
    } catch (const ParseError& e) {
      fail(res, HttpError{400, "parse", e.what(), std::nullopt});
    } catch (const Error& e) {
      fail(res, HttpError{e.kind() == ErrorKind::internal ? 500 : 400, to_string(e.kind()), e.what(), std::nullopt});
    } catch (const std::exception& e) {
      fail(res, HttpError{500, "internal", e.what(), std::nullopt});
    }
  }

  template <typename F>
  static void guarded(httplib::Response& res, int ok_status, F&& f) {
    handle(res, [&] {
      const Json j = f();
      res.status = ok_status;
      res.set_content(j.dump(2) + "\n", "application/json");
    });
  }

  static void fail(httplib::Response& res, const HttpError& e) {
    res.status = e.status;
    res.set_content(error_body(e).dump(2) + "\n", "application/json");
  }

  void routes() {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Headers", "Content-Type, Accept"},
                                {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"}});
    server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/catalog", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, 200, [&] { return to_json(options.catalog); });
    });
    server.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, 200, [&] {
        Json list = Json::array();
        std::shared_lock lock(sessions_mu);
        for (const auto& [id, s] : sessions) {
          std::lock_guard l(s->mu);
          list.push_back(s->summary());
        }
        return Json{{"sessions", list}};
      });
    });
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 201, [&] { return create_session(parse_body(req)); });
    });
    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 200, [&] {
        auto s = find(req.matches[1]);
        std::lock_guard lock(s->mu);
        Json out = s->summary();
        out["answers"] = to_json(s->responses);
        return out;
      });
    });
    server.Put(R"(/sessions/([^/]+)/answers)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 200, [&] { return put_answers(req.matches[1], parse_body(req)); });
    });
    server.Get(R"(/sessions/([^/]+)/score)", [this](const httplib::Request& req, httplib::Response& res) {
      const std::string accept = req.get_header_value("Accept");
      const bool markdown = accept.find("text/markdown") != std::string::npos;
      const bool text = !markdown && accept.find("text/plain") != std::string::npos;
      if (!markdown && !text) {
        guarded(res, 200, [&] {
          auto s = find(req.matches[1]);
          std::lock_guard lock(s->mu);
          return to_json(s->score());
        });
        return;
      }
      handle(res, [&] {
        auto s = find(req.matches[1]);
        std::lock_guard lock(s->mu);
        RenderSpec spec;
        spec.format = markdown ? RenderFormat::markdown : RenderFormat::human_table;
        res.status = 200;
        res.set_content(render_value(s->score(), spec),
                        markdown ? "text/markdown; charset=utf-8" : "text/plain; charset=utf-8");
      });
    });
    server.Post("/whatif", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 200, [&] { return what_if_request(parse_body(req)); });
    });
    server.Post("/compare", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 200, [&] { return compare_request(parse_body(req)); });
    });
    server.Post("/profile", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, 200, [&] { return profile_request(parse_body(req)); });
    });

    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
      const HttpError e = res.status == 404
                              ? HttpError{404, "not_found", "no route for " + req.method + " " + req.path, std::nullopt}
                              : HttpError{res.status, "http", "request failed", std::nullopt};
      res.set_content(error_body(e).dump(2) + "\n", "application/json");
      return httplib::Server::HandlerResponse::Handled;
    });
  }
};

Service::Service(ServiceOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

Service::~Service() { stop(); }

bool Service::listen(const std::string& host, int port) {
  impl_->running = true;
  const bool ok = impl_->server.listen(host, port);
  impl_->running = false;
  return ok;
}

int Service::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

void Service::run() {
  impl_->running = true;
  impl_->server.listen_after_bind();
  impl_->running = false;
}

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

bool Service::running() const { return impl_->server.is_running(); }

std::vector<std::string> Service::session_ids() const {
  std::shared_lock lock(impl_->sessions_mu);
  std::vector<std::string> out;
  for (const auto& [id, s] : impl_->sessions) out.push_back(id);
  return out;
}

}  // namespace dataworth
