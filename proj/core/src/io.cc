// Copyright 2026 The intquad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "intquad/io.h"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace intquad {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("instance: " + what);
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + " must be finite");
  return d;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json int_vector_json(const IntVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

// Non-finite numbers have no JSON form; they become null.
json scalar(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("version") || !doc["version"].is_number_integer() || doc["version"] != 1) {
    fail("\"version\" must be 1");
  }
  if (!doc.contains("n") || !doc["n"].is_number_integer()) fail("\"n\" must be an integer");
  const long long n = doc["n"].get<long long>();
  if (n < 1) fail("\"n\" must be positive");
  if (n > 100000) fail("\"n\" is too large");

  if (!doc.contains("P") || !doc["P"].is_array()) fail("\"P\" must be an array of rows");
  const json& rows = doc["P"];
  if (static_cast<long long>(rows.size()) != n) fail("\"P\" must have n rows");
  Matrix p(n, n);
  for (long long i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<long long>(row.size()) != n) {
      fail("row " + std::to_string(i) + " of \"P\" must have n entries");
    }
    for (long long j = 0; j < n; ++j) {
      p(i, j) = number_at(row[j], "P[" + std::to_string(i) + "][" + std::to_string(j) + "]");
    }
  }

  if (!doc.contains("q") || !doc["q"].is_array()) fail("\"q\" must be an array");
  if (static_cast<long long>(doc["q"].size()) != n) fail("\"q\" must have n entries");
  Vector q(n);
  for (long long i = 0; i < n; ++i) q(i) = number_at(doc["q"][i], "q[" + std::to_string(i) + "]");

  double offset = 0.0;
  if (doc.contains("offset")) offset = number_at(doc["offset"], "\"offset\"");

  std::string meta = "{}";
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) fail("\"meta\" must be an object");
    meta = doc["meta"].dump();
  }

  try {
    return Instance{Problem(std::move(p), std::move(q), offset), meta};
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string instance_to_json(const Problem& p, const std::string& meta_json) {
  const int n = p.dimension();
  json doc;
  doc["version"] = 1;
  doc["n"] = n;
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) row.push_back(p.P()(i, j));
    rows.push_back(std::move(row));
  }
  doc["P"] = std::move(rows);
  doc["q"] = vector_json(p.q());
  doc["offset"] = p.offset();
  json meta = json::parse(meta_json.empty() ? "{}" : meta_json);
  if (!meta.is_object()) throw std::invalid_argument("instance: meta must be a JSON object");
  doc["meta"] = std::move(meta);
  return doc.dump() + "\n";
}

void write_instance_file(const std::string& path, const Problem& p, const std::string& meta_json) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(p, meta_json);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string bound_report_to_json(const BoundReport& r, bool cts, bool scalar_method, bool tr,
                                 bool sdp) {
  json doc;
  if (cts) doc["f_cts"] = scalar(r.f_cts);
  if (scalar_method) {
    doc["f_scalar"] = scalar(r.f_scalar);
    doc["scalar_alpha"] = r.scalar_alpha;
    doc["scalar_case"] = to_string(r.scalar_case);
    doc["scalar_min_eig_margin"] = r.scalar_certificate.min_eig_margin;
  }
  if (tr) doc["f_tr"] = scalar(r.f_tr);
  if (sdp && r.f_sdp) {
    doc["f_sdp"] = scalar(*r.f_sdp);
    doc["sdp_converged"] = r.sdp_converged;
    if (r.sdp_certificate) {
      doc["sdp_lambda"] = vector_json(r.sdp_certificate->lambda);
      doc["sdp_min_eig_margin"] = r.sdp_certificate->min_eig_margin;
    }
  }
  if (cts || scalar_method || sdp) {
    doc["gain_bound"] = r.gain_bound;
    doc["gain_bound_uncorrected"] = r.gain_bound_uncorrected;
  }
  return doc.dump(2) + "\n";
}

std::string incumbent_to_json(const Incumbent& inc, const SearchResult* search) {
  json doc;
  doc["x"] = int_vector_json(inc.x);
  doc["value"] = inc.value;
  doc["source"] = to_string(inc.source);
  if (search) {
    doc["value_without_one_opt"] = search->best_without_one_opt.value;
    doc["samples"] = search->trace.size();
    doc["mean_one_opt_moves"] = search->mean_one_opt_moves();
  }
  return doc.dump(2) + "\n";
}

std::string exact_to_json(const ExactResult& r, const std::string& initial_ub_source,
                          double initial_ub) {
  json doc;
  doc["found"] = r.found;
  if (r.found) {
    doc["x"] = int_vector_json(r.x);
    doc["value"] = r.value;
  } else {
    doc["x"] = nullptr;
    doc["value"] = nullptr;
  }
  doc["proved_optimal"] = r.stats.proved_optimal;
  doc["nodes_visited"] = r.stats.nodes_visited;
  doc["incumbent_updates"] = r.stats.incumbent_updates;
  doc["budget_hit"] = r.stats.budget_hit;
  doc["initial_ub_source"] = initial_ub_source;
  doc["initial_ub"] = initial_ub;
  return doc.dump(2) + "\n";
}

}  // namespace intquad
