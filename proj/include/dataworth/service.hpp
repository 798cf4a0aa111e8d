// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dataworth Authors

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dataworth/catalog.hpp"
#include "dataworth/profiler.hpp"
#include "dataworth/scoring.hpp"

namespace dataworth {

struct ServiceOptions {
  Catalog catalog = Catalog::load_canonical();
  /// Profile for sessions that do not bring their own.
  WeightProfile weights;
  /// Session store; empty keeps sessions in memory only.
  std::filesystem::path store_dir;
  ProfileOptions profile_options;
};

/// HTTP JSON API over the scoring core.
///
///   GET  /catalog
///   GET  /sessions                      list
///   POST /sessions                      {dataset_id, answers?, weights?, replay_table?}
///   GET  /sessions/{id}                 session with its answers
///   PUT  /sessions/{id}/answers         {answers: {question_id: value | {value, note}}}
///   GET  /sessions/{id}/score           ValueReport; Accept: text/markdown or text/plain renders it
///   POST /whatif                        {session_id, changes: [{question_id, value}]}
///   POST /compare                       {session_ids: [...]}
///   POST /profile                       {path, create_session?}
///
/// Errors carry {"error": {kind, message, violations?}} with 400 (parse),
/// 404 (not found), 422 (validation) or 500.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves until stop(). Returns false if binding failed.
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it, or -1; serve with run().
  int bind_any_port(const std::string& host);
  void run();
  void stop();
  [[nodiscard]] bool running() const;

  /// Ids of the sessions currently held, sorted.
  [[nodiscard]] std::vector<std::string> session_ids() const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace dataworth
