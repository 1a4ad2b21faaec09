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

#ifndef INTQUAD_IO_H_
#define INTQUAD_IO_H_

#include <iosfwd>
#include <string>

#include "intquad/bounds.h"
#include "intquad/exact.h"
#include "intquad/heuristics.h"
#include "intquad/model.h"

namespace intquad {

struct Instance {
  Problem problem;
  // Free-form JSON object carried through unchanged.
  std::string meta_json = "{}";
};

// Instance JSON, version 1:
//   {"version":1, "n":int, "P":[[...], ...], "q":[...], "offset":float, "meta":{...}}
// P is given row by row. "offset" and "meta" are optional. Malformed input
// and Problem invariant violations throw std::invalid_argument naming the
// offending field.
Instance parse_instance(const std::string& text);
Instance read_instance_file(const std::string& path);

// Doubles are written in shortest round-trip form, so reading the output
// back reproduces the problem bit for bit.
std::string instance_to_json(const Problem& p, const std::string& meta_json = "{}");
void write_instance_file(const std::string& path, const Problem& p,
                         const std::string& meta_json = "{}");

// Flags select the bound families to include; fields of the others are
// omitted.
std::string bound_report_to_json(const BoundReport& r, bool cts, bool scalar, bool tr, bool sdp);
std::string incumbent_to_json(const Incumbent& inc, const SearchResult* search = nullptr);
std::string exact_to_json(const ExactResult& r, const std::string& initial_ub_source,
                          double initial_ub);

}  // namespace intquad

#endif  // INTQUAD_IO_H_
