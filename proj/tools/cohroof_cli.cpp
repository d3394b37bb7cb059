// Copyright 2026 The cohroof Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// cohroof command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohroof/cohroof.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnconverged = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StateDeleter {
  void operator()(cohroof_state* s) const { cohroof_state_destroy(s); }
};
struct ResultDeleter {
  void operator()(cohroof_result* r) const { cohroof_result_destroy(r); }
};
using StatePtr = std::unique_ptr<cohroof_state, StateDeleter>;
using ResultPtr = std::unique_ptr<cohroof_result, ResultDeleter>;

struct StateFile {
  std::size_t dim = 0;
  std::vector<double> entries;  // interleaved re, im; row-major
  std::optional<std::string> label;
  std::string checksum;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw InputError(where + ": expected a number");
  return v.get<double>();
}

StateFile read_state_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": JSON parse error at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!doc.is_object()) throw InputError(path + ": top level must be an object");
  if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long>() <= 0)
    throw InputError(path + ": \"dim\" must be a positive integer");
  StateFile sf;
  sf.dim = doc["dim"].get<std::size_t>();
  sf.checksum = "fnv1a64:" + fnv1a64(bytes);

  if (!doc.contains("matrix") || !doc["matrix"].is_array())
    throw InputError(path + ": \"matrix\" must be an array of rows");
  const json& rows = doc["matrix"];
  if (rows.size() != sf.dim)
    throw InputError(path + ": matrix has " + std::to_string(rows.size()) + " rows, dim is " +
                     std::to_string(sf.dim));
  sf.entries.reserve(2 * sf.dim * sf.dim);
  for (std::size_t i = 0; i < sf.dim; ++i) {
    const std::string row_at = path + ": matrix[" + std::to_string(i) + "]";
    if (!rows[i].is_array() || rows[i].size() != sf.dim)
      throw InputError(row_at + ": expected " + std::to_string(sf.dim) + " entries");
    for (std::size_t j = 0; j < sf.dim; ++j) {
      const std::string at = row_at + "[" + std::to_string(j) + "]";
      const json& pair = rows[i][j];
      if (!pair.is_array() || pair.size() != 2) throw InputError(at + ": expected [re, im] pair");
      sf.entries.push_back(number_at(pair[0], at + "[0]"));
      sf.entries.push_back(number_at(pair[1], at + "[1]"));
    }
  }
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw InputError(path + ": \"label\" must be a string");
    sf.label = doc["label"].get<std::string>();
  }
  return sf;
}

[[noreturn]] void fail_status(cohroof_status st, const std::string& context) {
  long row = -1, col = -1;
  cohroof_last_error_position(&row, &col);
  std::ostringstream os;
  os << context << ": " << cohroof_status_string(st) << ": " << cohroof_last_error();
  if (row >= 0) {
    os << " [entry " << row;
    if (col >= 0) os << "," << col;
    os << "]";
  }
  throw InputError(os.str());
}

json pair_json(double re, double im) { return json::array({re, im}); }

json state_file_json(const cohroof_state* st, const std::optional<std::string>& label) {
  const std::size_t n = cohroof_state_dim(st);
  std::vector<double> buf(2 * n * n);
  if (const auto s = cohroof_state_entries(st, buf.data(), buf.size()); s != COHROOF_OK)
    fail_status(s, "state entries");
  json rows = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j)
      row.push_back(pair_json(buf[2 * (i * n + j)], buf[2 * (i * n + j) + 1]));
    rows.push_back(std::move(row));
  }
  json out = {{"dim", n}, {"matrix", std::move(rows)}};
  if (label) out["label"] = *label;
  return out;
}

json ensemble_json(const cohroof_result* r) {
  json members = json::array();
  const std::size_t dim = cohroof_result_member_dim(r);
  std::vector<double> amp(2 * dim);
  for (std::size_t k = 0; k < cohroof_result_member_count(r); ++k) {
    double w = 0.0;
    if (const auto s = cohroof_result_member(r, k, &w, amp.data(), amp.size()); s != COHROOF_OK)
      fail_status(s, "ensemble member");
    json a = json::array();
    for (std::size_t i = 0; i < dim; ++i) a.push_back(pair_json(amp[2 * i], amp[2 * i + 1]));
    members.push_back({{"weight", w}, {"amplitudes", std::move(a)}});
  }
  return members;
}

json blocks_json(const cohroof_result* r) {
  json blocks = json::array();
  for (std::size_t b = 0; b < cohroof_result_block_count(r); ++b) {
    cohroof_block_info info{};
    cohroof_result_block(r, b, &info);
    std::vector<size_t> idx(info.index_count);
    cohroof_result_block_indices(r, b, idx.data(), idx.size());
    blocks.push_back({{"indices", idx},
                      {"trace_weight", info.trace_weight},
                      {"value", info.value},
                      {"path", info.analytic ? "analytic" : "numeric"},
                      {"method", info.method},
                      {"converged", info.converged != 0}});
  }
  return blocks;
}

json diagnostics_json(const cohroof_result* r) {
  json restarts = json::array();
  for (std::size_t i = 0; i < cohroof_result_restart_count(r); ++i) {
    cohroof_restart_info info{};
    cohroof_result_restart(r, i, &info);
    restarts.push_back({{"best_value", info.best_value},
                        {"iterations", info.iterations},
                        {"final_step", info.final_step},
                        {"converged", info.converged != 0}});
  }
  json d = {{"converged", cohroof_result_converged(r) != 0},
            {"rank", cohroof_result_rank(r)},
            {"ensemble_size", cohroof_result_ensemble_size(r)},
            {"members", cohroof_result_member_count(r)},
            {"saturated", cohroof_result_saturated(r) != 0},
            {"best_restart", cohroof_result_best_restart(r)},
            {"restarts", std::move(restarts)}};
  double lb = 0.0;
  if (cohroof_result_lower_bound(r, &lb)) d["l1_lower_bound"] = lb;
  return d;
}

struct Options {
  std::string measure;
  std::string file;
  std::uint64_t seed = 0;
  std::size_t restarts = 16;
  std::size_t ensemble_size = 0;
  double tol = 1e-8;
  std::size_t max_iterations = 2000;
  std::string format = "text";
  bool emit_ensemble = false;
  std::string dims;
  bool direct = false;
  std::string output;
};

cohroof_config make_config(const Options& o) {
  cohroof_config cfg;
  cohroof_config_init(&cfg);
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.ensemble_size = o.ensemble_size;
  // An explicit --ensemble-size may exceed the rank^2 default cap.
  cfg.ensemble_cap = o.ensemble_size;
  cfg.convergence_tol = o.tol;
  cfg.max_iterations = o.max_iterations;
  return cfg;
}

StatePtr load_state(const StateFile& sf) {
  cohroof_state* raw = nullptr;
  if (const auto s = cohroof_state_create(sf.dim, sf.entries.data(), 1.0, &raw); s != COHROOF_OK)
    fail_status(s, "invalid state");
  return StatePtr(raw);
}

// Runs a roof-type call; non-convergence leaves a usable result.
ResultPtr run_result(cohroof_status st, cohroof_result* raw, const std::string& what,
                     bool& unconverged) {
  if (st == COHROOF_ERR_NOT_CONVERGED) {
    unconverged = true;
  } else if (st != COHROOF_OK) {
    fail_status(st, what);
  }
  return ResultPtr(raw);
}

json base_report(const std::string& measure, const StateFile& sf, const Options& o) {
  json r = {{"measure", measure}, {"dim", sf.dim}, {"seed", o.seed},
            {"input_checksum", sf.checksum}};
  if (sf.label) r["label"] = *sf.label;
  return r;
}

void fill_from_result(json& report, const cohroof_result* r, const Options& o) {
  report["value"] = cohroof_result_value(r);
  report["path"] = cohroof_result_is_analytic(r) ? "analytic" : "numeric";
  report["blocks"] = blocks_json(r);
  if (o.emit_ensemble) report["ensemble"] = ensemble_json(r);
  report["diagnostics"] = diagnostics_json(r);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void print_text(const json& report, std::ostream& os) {
  os << "measure: " << report["measure"].get<std::string>() << "\n";
  if (report.contains("label")) os << "label: " << report["label"].get<std::string>() << "\n";
  os << "dim: " << report["dim"].get<std::size_t>() << "\n";
  os << "value: " << fmt(report["value"].get<double>()) << "\n";
  os << "path: " << report["path"].get<std::string>() << "\n";
  if (report.contains("blocks")) {
    for (const auto& b : report["blocks"]) {
      os << "block {";
      bool first = true;
      for (const auto& i : b["indices"]) {
        os << (first ? "" : ",") << i.get<std::size_t>();
        first = false;
      }
      os << "}: " << b["method"].get<std::string>() << " (" << b["path"].get<std::string>()
         << ") weight " << fmt(b["trace_weight"].get<double>()) << " value "
         << fmt(b["value"].get<double>()) << (b["converged"].get<bool>() ? "" : " UNCONVERGED")
         << "\n";
    }
  }
  if (report.contains("diagnostics") && !report["diagnostics"]["restarts"].empty()) {
    const auto& d = report["diagnostics"];
    os << "optimizer: rank " << d["rank"].get<std::size_t>() << ", ensemble size "
       << d["ensemble_size"].get<std::size_t>() << ", " << d["restarts"].size()
       << " restarts, best restart " << d["best_restart"].get<std::size_t>()
       << (d["converged"].get<bool>() ? ", converged" : ", NOT converged")
       << (d["saturated"].get<bool>() ? ", all members used" : "") << "\n";
  }
  if (report.contains("diagnostics") && report["diagnostics"].contains("l1_lower_bound"))
    os << "l1 lower bound: " << fmt(report["diagnostics"]["l1_lower_bound"].get<double>()) << "\n";
  if (report.contains("direct")) {
    os << "direct value: " << fmt(report["direct"]["value"].get<double>()) << "\n";
    os << "discrepancy: " << fmt(report["discrepancy"].get<double>()) << "\n";
  }
  if (report.contains("ensemble")) {
    std::size_t k = 0;
    for (const auto& m : report["ensemble"]) {
      os << "member " << k++ << ": weight " << fmt(m["weight"].get<double>()) << " amplitudes";
      for (const auto& a : m["amplitudes"])
        os << " (" << fmt(a[0].get<double>()) << "," << fmt(a[1].get<double>()) << ")";
      os << "\n";
    }
  }
  os << "seed: " << report["seed"].get<std::uint64_t>() << "\n";
  os << "input checksum: " << report["input_checksum"].get<std::string>() << "\n";
}

void emit(const json& report, const Options& o) {
  if (o.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    print_text(report, std::cout);
}

int cmd_coherence(const Options& o) {
  const StateFile sf = read_state_file(o.file);
  const StatePtr state = load_state(sf);
  json report = base_report(o.measure, sf, o);
  bool unconverged = false;

  if (o.measure == "l1") {
    double v = 0.0;
    if (const auto s = cohroof_l1_coherence(state.get(), &v); s != COHROOF_OK)
      fail_status(s, "l1");
    report["value"] = v;
    report["path"] = "analytic";
    report["blocks"] = json::array();
  } else {
    const cohroof_config cfg = make_config(o);
    cohroof_result* raw = nullptr;
    const auto st = o.measure == "concurrence" ? cohroof_concurrence(state.get(), &cfg, &raw)
                                               : cohroof_assistance(state.get(), &cfg, &raw);
    const ResultPtr r = run_result(st, raw, o.measure, unconverged);
    fill_from_result(report, r.get(), o);
  }
  emit(report, o);
  return unconverged ? kExitUnconverged : kExitOk;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  std::size_t a = 0, b = 0;
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> a >> comma >> b) || comma != ',' || a == 0 || b == 0 || !(is >> std::ws).eof())
    throw InputError("--dims must look like dA,dB with positive integers, got '" + text + "'");
  return {a, b};
}

int cmd_entangle(const Options& o) {
  const StateFile sf = read_state_file(o.file);

  if (o.measure == "negativity") {
    if (o.dims.empty()) throw InputError("negativity needs --dims dA,dB");
    const auto [da, db] = parse_dims(o.dims);
    if (da * db != sf.dim)
      throw InputError("--dims " + o.dims + " does not factor dim " + std::to_string(sf.dim));
    cohroof_state* raw = nullptr;
    if (const auto s = cohroof_state_create_bipartite(da, db, sf.entries.data(), &raw);
        s != COHROOF_OK)
      fail_status(s, "invalid state");
    const StatePtr state(raw);
    double v = 0.0;
    if (const auto s = cohroof_negativity(state.get(), &v); s != COHROOF_OK)
      fail_status(s, "negativity");
    json report = base_report("negativity", sf, o);
    report["value"] = v;
    report["path"] = "analytic";
    report["dims"] = {da, db};
    emit(report, o);
    return kExitOk;
  }

  const StatePtr state = load_state(sf);

  if (o.measure == "lift") {
    cohroof_state* raw = nullptr;
    if (const auto s = cohroof_schmidt_lift(state.get(), &raw); s != COHROOF_OK)
      fail_status(s, "lift");
    const StatePtr lifted(raw);
    const std::string label = "schmidt_lift(" + sf.label.value_or("unlabeled") + ")";
    const std::string text = state_file_json(lifted.get(), label).dump(2) + "\n";
    if (o.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.output, std::ios::binary);
      if (!out) throw InputError(o.output + ": cannot write file");
      out << text;
    }
    return kExitOk;
  }

  // roof
  const cohroof_config cfg = make_config(o);
  bool unconverged = false;
  cohroof_result* raw = nullptr;
  const auto st = cohroof_negativity_roof_mc(state.get(), &cfg, &raw);
  const ResultPtr mc = run_result(st, raw, "negativity roof", unconverged);
  json report = base_report("negativity_roof", sf, o);
  fill_from_result(report, mc.get(), o);

  if (o.direct) {
    cohroof_state* lifted_raw = nullptr;
    if (const auto s = cohroof_schmidt_lift(state.get(), &lifted_raw); s != COHROOF_OK)
      fail_status(s, "lift");
    const StatePtr lifted(lifted_raw);
    cohroof_result* draw = nullptr;
    const auto dst = cohroof_negativity_roof_direct(lifted.get(), &cfg, &draw);
    const ResultPtr direct = run_result(dst, draw, "direct negativity roof", unconverged);
    json d = {{"value", cohroof_result_value(direct.get())},
              {"diagnostics", diagnostics_json(direct.get())}};
    if (o.emit_ensemble) d["ensemble"] = ensemble_json(direct.get());
    report["direct"] = std::move(d);
    report["discrepancy"] =
        std::abs(cohroof_result_value(mc.get()) - cohroof_result_value(direct.get()));
  }
  emit(report, o);
  return unconverged ? kExitUnconverged : kExitOk;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("file", o.file, "StateFile JSON")->required();
  cmd->add_option("--seed", o.seed, "optimizer seed");
  cmd->add_option("--restarts", o.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--ensemble-size", o.ensemble_size, "ensemble size m (default rank^2)");
  cmd->add_option("--tol", o.tol, "optimizer convergence tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-iterations", o.max_iterations, "optimizer sweeps per restart")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--emit-ensemble", o.emit_ensemble, "include the certifying ensemble");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohroof: coherence concurrence, negativity and their convex roofs"};
  app.require_subcommand(1);
  Options o;

  auto* coherence = app.add_subcommand("coherence", "l1 coherence, concurrence, assistance");
  coherence->add_option("measure", o.measure, "l1 | concurrence | assist")
      ->required()
      ->check(CLI::IsMember({"l1", "concurrence", "assist"}));
  add_common(coherence, o);

  auto* entangle = app.add_subcommand("entangle", "Schmidt lift, negativity, negativity roof");
  entangle->add_option("measure", o.measure, "lift | negativity | roof")
      ->required()
      ->check(CLI::IsMember({"lift", "negativity", "roof"}));
  add_common(entangle, o);
  entangle->add_option("--dims", o.dims, "bipartite dims dA,dB (negativity)");
  entangle->add_flag("--direct", o.direct, "also run the direct bipartite roof (roof)");
  entangle->add_option("--output", o.output, "write the lifted StateFile here (lift)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return coherence->parsed() ? cmd_coherence(o) : cmd_entangle(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
