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

#include "diracsim/io.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "diracsim/error.hpp"

namespace diracsim::io {

using nlohmann::json;

std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

double parse_double(const std::string &s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos)
        fail(ErrorCode::Io, "empty numeric field");
    double v = 0.0;
    const char *first = s.data() + b;
    const char *last = s.data() + e + 1;
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc() || r.ptr != last)
        fail(ErrorCode::Io, "cannot parse number '" + s + "'");
    return v;
}

std::string fnv1a_hex(const std::string &data)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string &line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep))
        out.push_back(cell);
    if (!line.empty() && line.back() == sep)
        out.emplace_back();
    return out;
}

void write_header(std::ostream &os, const Header &h)
{
    for (const auto &[k, v] : h)
        os << "# " << k << '=' << v << '\n';
}

// Reads leading "# key=value" lines, returns the first data line.
std::string read_header(std::istream &is, Header *h)
{
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (h && eq != std::string::npos)
                h->emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!line.empty())
            return line;
    }
    fail(ErrorCode::Io, "CSV input has no data rows");
}

const std::string *lookup(const Header &h, const std::string &key)
{
    for (const auto &[k, v] : h)
        if (k == key)
            return &v;
    return nullptr;
}

Header provenance_header(const wigner::WignerGrid &w, const Header &extra)
{
    Header h{{"scenario", w.provenance.scenario},
             {"model", w.provenance.model},
             {"outcome", w.provenance.outcome},
             {"time", format_double(w.provenance.time)},
             {"weight", format_double(w.weight())}};
    h.insert(h.end(), extra.begin(), extra.end());
    return h;
}

} // namespace

void write_wigner_csv(std::ostream &os, const wigner::WignerGrid &w, const Header &extra)
{
    const auto &g = w.grid();
    write_header(os, provenance_header(w, extra));
    os << "x\\p";
    for (std::size_t j = 0; j < g.n_p; ++j)
        os << ',' << format_double(g.p(j));
    os << '\n';
    for (std::size_t i = 0; i < g.n_x; ++i) {
        os << format_double(g.x(i));
        for (std::size_t j = 0; j < g.n_p; ++j)
            os << ',' << format_double(w.at(i, j));
        os << '\n';
    }
}

wigner::WignerGrid read_wigner_csv(std::istream &is)
{
    Header h;
    const auto head = split(read_header(is, &h), ',');
    if (head.size() < 3 || head[0] != "x\\p")
        fail(ErrorCode::Io, "Wigner CSV: malformed header row");
    RVector ps;
    for (std::size_t j = 1; j < head.size(); ++j)
        ps.push_back(parse_double(head[j]));
    RVector xs, values;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != head.size())
            fail(ErrorCode::Io, "Wigner CSV: ragged row");
        xs.push_back(parse_double(cells[0]));
        for (std::size_t j = 1; j < cells.size(); ++j)
            values.push_back(parse_double(cells[j]));
    }
    if (xs.size() < 2)
        fail(ErrorCode::Io, "Wigner CSV: need at least two x rows");
    wigner::PhaseSpaceGrid grid{xs.front(), xs.back(), xs.size(), ps.front(), ps.back(), ps.size()};
    const auto *weight = lookup(h, "weight");
    wigner::WignerGrid w(grid, std::move(values), weight ? parse_double(*weight) : 1.0);
    if (const auto *v = lookup(h, "scenario"))
        w.provenance.scenario = *v;
    if (const auto *v = lookup(h, "model"))
        w.provenance.model = *v;
    if (const auto *v = lookup(h, "outcome"))
        w.provenance.outcome = *v;
    if (const auto *v = lookup(h, "time"))
        w.provenance.time = parse_double(*v);
    return w;
}

std::string wigner_to_json(const wigner::WignerGrid &w, const Header &extra)
{
    const auto &g = w.grid();
    json j;
    j["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"n_x", g.n_x},
                 {"p_min", g.p_min}, {"p_max", g.p_max}, {"n_p", g.n_p}};
    j["weight"] = w.weight();
    j["provenance"] = {{"scenario", w.provenance.scenario},
                       {"model", w.provenance.model},
                       {"outcome", w.provenance.outcome},
                       {"time", w.provenance.time}};
    for (const auto &[k, v] : extra)
        j["provenance"][k] = v;
    j["values"] = w.values();
    return j.dump(1) + "\n";
}

wigner::WignerGrid wigner_from_json(const std::string &text)
{
    try {
        const json j = json::parse(text);
        const auto &g = j.at("grid");
        wigner::PhaseSpaceGrid grid{g.at("x_min").get<double>(), g.at("x_max").get<double>(),
                                    g.at("n_x").get<std::size_t>(), g.at("p_min").get<double>(),
                                    g.at("p_max").get<double>(), g.at("n_p").get<std::size_t>()};
        wigner::WignerGrid w(grid, j.at("values").get<RVector>(), j.at("weight").get<double>());
        const auto &p = j.at("provenance");
        w.provenance.scenario = p.value("scenario", "");
        w.provenance.model = p.value("model", "");
        w.provenance.outcome = p.value("outcome", "");
        w.provenance.time = p.value("time", 0.0);
        return w;
    } catch (const json::exception &e) {
        fail(ErrorCode::Io, std::string("Wigner JSON: ") + e.what());
    }
}

void Table::validate() const
{
    require(!names.empty() && names.size() == columns.size(), "Table: names and columns differ");
    for (const auto &c : columns)
        require(c.size() == columns.front().size(), "Table: columns differ in length");
}

void write_table_csv(std::ostream &os, const Table &t, const Header &header)
{
    t.validate();
    write_header(os, header);
    for (std::size_t c = 0; c < t.names.size(); ++c)
        os << (c ? "," : "") << t.names[c];
    os << '\n';
    for (std::size_t r = 0; r < t.columns.front().size(); ++r) {
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << (c ? "," : "") << format_double(t.columns[c][r]);
        os << '\n';
    }
}

Table read_table_csv(std::istream &is, Header *header)
{
    Table t;
    t.names = split(read_header(is, header), ',');
    t.columns.assign(t.names.size(), {});
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = split(line, ',');
        if (cells.size() != t.names.size())
            fail(ErrorCode::Io, "CSV: ragged row");
        for (std::size_t c = 0; c < cells.size(); ++c)
            t.columns[c].push_back(parse_double(cells[c]));
    }
    return t;
}

void write_rabi_csv(std::ostream &os, const tomography::RabiTrace &trace, const Header &header)
{
    write_table_csv(os, {{"tau_ns", "value"}, {trace.taus, trace.values}}, header);
}

tomography::RabiTrace read_rabi_csv(std::istream &is)
{
    const Table t = read_table_csv(is);
    if (t.names != std::vector<std::string>{"tau_ns", "value"})
        fail(ErrorCode::Io, "Rabi CSV: expected columns tau_ns,value");
    tomography::RabiTrace tr;
    tr.taus = t.columns[0];
    tr.values = t.columns[1];
    return tr;
}

void write_distribution_csv(std::ostream &os, const tomography::PhotonDistribution &dist,
                            const Header &header)
{
    RVector n(dist.probs.size());
    for (std::size_t k = 0; k < n.size(); ++k)
        n[k] = static_cast<double>(k);
    write_table_csv(os, {{"n", "prob"}, {n, dist.probs}}, header);
}

tomography::PhotonDistribution read_distribution_csv(std::istream &is)
{
    const Table t = read_table_csv(is);
    if (t.names != std::vector<std::string>{"n", "prob"})
        fail(ErrorCode::Io, "distribution CSV: expected columns n,prob");
    for (std::size_t k = 0; k < t.columns[0].size(); ++k)
        if (t.columns[0][k] != static_cast<double>(k))
            fail(ErrorCode::Io, "distribution CSV: n must run 0, 1, 2, ...");
    return tomography::PhotonDistribution::from(t.columns[1]);
}

std::string samples_to_json(const tomography::DisplacedSampleSet &set)
{
    json arr = json::array();
    for (const auto &s : set.samples)
        arr.push_back({{"gamma", {{"re", s.gamma.real()}, {"im", s.gamma.imag()}}},
                       {"probs", s.dist.probs},
                       {"P_e", s.P_e},
                       {"P_g", s.P_g}});
    return json{{"samples", arr}}.dump(1) + "\n";
}

tomography::DisplacedSampleSet samples_from_json(const std::string &text)
{
    try {
        const json j = json::parse(text);
        tomography::DisplacedSampleSet set;
        for (const auto &s : j.at("samples"))
            set.samples.push_back(
                {cplx(s.at("gamma").at("re").get<double>(), s.at("gamma").at("im").get<double>()),
                 tomography::PhotonDistribution::from(s.at("probs").get<RVector>()),
                 s.at("P_e").get<double>(), s.at("P_g").get<double>()});
        set.validate();
        return set;
    } catch (const json::exception &e) {
        fail(ErrorCode::Io, std::string("sample-set JSON: ") + e.what());
    }
}

void write_file(const std::string &path, const std::string &content)
{
    std::error_code ec;
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent, ec);
    std::ofstream os(path, std::ios::binary);
    if (!os)
        fail(ErrorCode::Io, "cannot open " + path + " for writing");
    os << content;
    if (!os)
        fail(ErrorCode::Io, "write to " + path + " failed");
}

std::string read_file(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        fail(ErrorCode::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace diracsim::io
