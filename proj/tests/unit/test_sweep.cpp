// Copyright 2026 The qfiopt Authors
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


#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "qfiopt/sweep.hpp"

using namespace qfiopt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Csv {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    return out;
}

Csv parse(const std::string& text) {
    Csv csv;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            csv.comments.push_back(line.substr(2));
        } else if (csv.header.empty()) {
            csv.header = split(line);
        } else {
            std::vector<double> row;
            for (const std::string& cell : split(line)) {
                row.push_back(std::strtod(cell.c_str(), nullptr));
            }
            csv.rows.push_back(row);
        }
    }
    return csv;
}

std::string render(const SweepSpec& spec, const std::vector<std::string>& preamble = {},
                   unsigned workers = 1) {
    std::ostringstream out;
    write_sweep(spec, out, preamble, workers);
    return out.str();
}

SweepSpec depolarizing_sweep() {
    SweepSpec spec;
    spec.noise.preset = PresetKind::depolarizing;
    spec.start = 0.1;
    spec.stop = 0.9;
    spec.steps = 9;
    spec.n = 4;
    return spec;
}

} // namespace

TEST_CASE("number formatting", "[sweep]") {
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(1.998048780487805) == "1.99804878049");
    CHECK(format_real(1e-300) == "1e-300");
    CHECK(format_real(std::nan("")) == "nan");
    CHECK(format_real(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_real(12.0) == "12");
}

TEST_CASE("column names round-trip", "[sweep]") {
    for (Column c : all_columns) {
        const auto parsed = parse_column(column_name(c));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == c);
    }
    CHECK_FALSE(parse_column("bogus").has_value());
}

TEST_CASE("grid construction", "[sweep]") {
    SweepSpec spec = depolarizing_sweep();
    const std::vector<double> lin = sweep_grid(spec);
    REQUIRE(lin.size() == 9);
    CHECK(lin.front() == 0.1);
    CHECK(lin.back() == 0.9);
    CHECK_THAT(lin[4], WithinAbs(0.5, 1e-15));

    spec.spacing = Spacing::log;
    spec.start = 0.01;
    spec.stop = 1.0;
    spec.steps = 3;
    const std::vector<double> lg = sweep_grid(spec);
    CHECK_THAT(lg[1], WithinRel(0.1, 1e-14));
    CHECK(lg.back() == 1.0);

    SweepSpec ns;
    ns.var = SweepVar::n;
    ns.start = 2;
    ns.stop = 6;
    CHECK(sweep_grid(ns) == std::vector<double>{2, 3, 4, 5, 6});
}

TEST_CASE("grid validation", "[sweep]") {
    SweepSpec spec = depolarizing_sweep();
    SECTION("reversed bracket") {
        spec.start = 0.9;
        spec.stop = 0.1;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("too few steps") {
        spec.steps = 1;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("log spacing from zero") {
        spec.spacing = Spacing::log;
        spec.start = 0.0;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("parameter out of range") {
        spec.stop = 1.2;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("no columns") {
        spec.columns.clear();
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("preset without a parameter") {
        spec.noise.preset = PresetKind::noiseless;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
    SECTION("fractional n range") {
        spec.var = SweepVar::n;
        spec.start = 1.5;
        spec.stop = 4;
        CHECK_THROWS_AS(sweep_grid(spec), RangeError);
    }
}

TEST_CASE("parameter sweep cells match direct evaluation", "[sweep]") {
    SweepSpec spec = depolarizing_sweep();
    spec.columns = {Column::qfi, Column::qfi_separable, Column::log_qfi, Column::kappa_opt,
                    Column::n_opt, Column::ratio, Column::fq_over_n_sq};
    const Csv csv = parse(render(spec, {"first", "second"}));
    CHECK(csv.comments == std::vector<std::string>{"first", "second"});
    CHECK(csv.header == std::vector<std::string>{"param", "qfi", "qfi_separable", "log_qfi",
                                                 "kappa_opt", "n_opt", "ratio",
                                                 "fq_over_n_sq"});
    REQUIRE(csv.rows.size() == 9);
    for (const auto& row : csv.rows) {
        const NoiseParams noise = presets::depolarizing(row[0]);
        const QfiResult r = qfi(noise, make_probe(4, 0.5));
        const OptimalSetting best = optimize_n(noise, KappaPolicy::fixed(0.5), 1000);
        CHECK_THAT(row[1], WithinRel(r.value, 1e-11));
        CHECK_THAT(row[2], WithinRel(4 * row[0] * row[0], 1e-11));
        CHECK_THAT(row[3], WithinAbs(r.log_value, 1e-10));
        CHECK_THAT(row[4], WithinAbs(0.5, 1e-11));
        CHECK(row[5] == static_cast<double>(best.n_opt));
        CHECK_THAT(row[6], WithinRel(best.ratio_vs_separable, 1e-11));
        CHECK_THAT(row[7], WithinRel(best.fq_over_n_sq, 1e-11));
    }
}

TEST_CASE("size sweep with several series", "[sweep]") {
    SweepSpec spec;
    spec.noise.preset = PresetKind::depolarizing;
    spec.var = SweepVar::n;
    spec.start = 1;
    spec.stop = 5;
    spec.series = {0.8, 0.95};
    const Csv csv = parse(render(spec));
    CHECK(csv.header == std::vector<std::string>{"param", "n", "qfi", "qfi_separable"});
    REQUIRE(csv.rows.size() == 10);
    for (const auto& row : csv.rows) {
        const long n = static_cast<long>(row[1]);
        const NoiseParams noise = presets::depolarizing(row[0]);
        CHECK_THAT(row[2], WithinRel(qfi(noise, make_probe(n, 0.5)).value, 1e-11));
        CHECK_THAT(row[3], WithinRel(static_cast<double>(n) * row[0] * row[0], 1e-11));
    }
    CHECK(csv.rows[5][0] == 0.95);
    CHECK(csv.rows[5][1] == 1.0);
}

TEST_CASE("inactive-qubit columns", "[sweep]") {
    SweepSpec spec;
    spec.noise.preset = PresetKind::amplitude_damping;
    spec.start = 0.2;
    spec.stop = 0.6;
    spec.steps = 5;
    spec.n = 3;
    spec.n_active = 2;
    spec.kappa = KappaPolicy::optimal_per_n();
    spec.columns = {Column::qfi_full, Column::qfi, Column::qfi_separable};
    const Csv csv = parse(render(spec));
    for (const auto& row : csv.rows) {
        const NoiseParams noise = presets::amplitude_damping(row[0]);
        CHECK_THAT(row[1], WithinRel(qfi(noise, make_probe(3, 3, kappa_opt(noise, 3, 3))).value,
                                     1e-11));
        CHECK_THAT(row[2], WithinRel(qfi(noise, make_probe(3, 2, kappa_opt(noise, 3, 2))).value,
                                     1e-11));
        CHECK_THAT(row[3], WithinRel(2 * row[0], 1e-11));
    }
}

TEST_CASE("analytic size is nan outside its domain", "[sweep]") {
    SweepSpec spec = depolarizing_sweep();
    spec.columns = {Column::n_opt_analytic};
    CHECK(render(spec).find("nan") == std::string::npos);
    spec.noise.preset = PresetKind::gad;
    spec.noise.mu = -0.5; // mu0 < 0
    const Csv csv = parse(render(spec));
    for (const auto& row : csv.rows) {
        CHECK(std::isnan(row[1]));
    }
}

TEST_CASE("output does not depend on the worker count", "[sweep]") {
    SweepSpec spec = depolarizing_sweep();
    spec.steps = 40;
    spec.columns = {Column::qfi, Column::n_opt, Column::fq_max, Column::partial_vs_maximal};
    const std::string one = render(spec, {"x"}, 1);
    CHECK(render(spec, {"x"}, 4) == one);
    CHECK(render(spec, {"x"}, 1) == one);
}

TEST_CASE("printed values survive a round trip to 12 digits", "[sweep][property]") {
    for (double x : {0.1, 1.0 / 3.0, 2.718281828459045, 1.2345678901234e-200, 9.87654321e15}) {
        const double back = std::strtod(format_real(x).c_str(), nullptr);
        CHECK_THAT(back, WithinRel(x, 5e-12));
    }
}
