// Copyright 2026 The diracsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "diracsim/tomography.hpp"
#include "diracsim/types.hpp"
#include "diracsim/wigner.hpp"

namespace diracsim::io {

/// Key/value lines written as "# key=value" above CSV data.
using Header = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
double parse_double(const std::string &s);

/// FNV-1a 64-bit hash as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string &data);

/// First row "x\p" then the p axis; each following row is x followed by W(x, p_j).
void write_wigner_csv(std::ostream &os, const wigner::WignerGrid &w, const Header &extra = {});
wigner::WignerGrid read_wigner_csv(std::istream &is);

std::string wigner_to_json(const wigner::WignerGrid &w, const Header &extra = {});
wigner::WignerGrid wigner_from_json(const std::string &text);

/// Named columns of equal length.
struct Table {
    std::vector<std::string> names;
    std::vector<RVector> columns;

    void validate() const;
};

void write_table_csv(std::ostream &os, const Table &t, const Header &header = {});
Table read_table_csv(std::istream &is, Header *header = nullptr);

void write_rabi_csv(std::ostream &os, const tomography::RabiTrace &trace, const Header &header = {});
/// Values and taus only; the model is left at its defaults.
tomography::RabiTrace read_rabi_csv(std::istream &is);

void write_distribution_csv(std::ostream &os, const tomography::PhotonDistribution &dist,
                            const Header &header = {});
tomography::PhotonDistribution read_distribution_csv(std::istream &is);

std::string samples_to_json(const tomography::DisplacedSampleSet &set);
tomography::DisplacedSampleSet samples_from_json(const std::string &text);

/// Writes the whole string to path, creating parent directories. Throws Io.
void write_file(const std::string &path, const std::string &content);
std::string read_file(const std::string &path);

} // namespace diracsim::io
