/*
   Copyright 2026 The pentacycle authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Fixture tables (tables/*.json). Directory: $PENTACYCLE_FIXTURES, else the
// compiled-in default.

#ifndef PENTACYCLE_FIXTURES_HPP
#define PENTACYCLE_FIXTURES_HPP

#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pentacycle/exact.hpp"

#ifndef PENTACYCLE_DEFAULT_FIXTURES
#define PENTACYCLE_DEFAULT_FIXTURES "tables"
#endif

namespace pentacycle {

using Json = nlohmann::ordered_json;

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string fixture_dir()
{
    const char* env = std::getenv("PENTACYCLE_FIXTURES");
    return (env && *env) ? std::string(env) : std::string(PENTACYCLE_DEFAULT_FIXTURES);
}

inline Json load_fixture(const std::string& file)
{
    std::string path = fixture_dir() + "/" + file;
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture " + path);
    try {
        return Json::parse(in);
    } catch (const std::exception& e) {
        throw FixtureError("malformed fixture " + path + ": " + e.what());
    }
}

inline BiPoly bipoly_from_row_texts(const Json& rows)
{
    std::vector<QPoly> r;
    for (auto& t : rows) r.push_back(parse_qpoly(t.get<std::string>()));
    return BiPoly::from_rows(r);
}

inline Json bipoly_rows_json(const BiPoly& b)
{
    Json j = Json::array();
    for (auto& s : b.to_rows()) j.push_back(s);
    return j;
}

/// tau_N(trace, c) from the fixture tables, N in {5, 6}.
inline BiPoly tau_fixture(int N)
{
    if (N == 5) return bipoly_from_row_texts(load_fixture("tau5.json").at("rows_by_z"));
    if (N == 6) return bipoly_from_row_texts(load_fixture("tau6.json").at("rows_by_x"));
    throw std::domain_error("tau_fixture: only N = 5, 6 are tabulated");
}

inline Rat json_rat(const Json& j)
{
    if (j.is_number_integer()) return Rat(j.get<long>());
    return parse_rational(j.get<std::string>());
}

}  // namespace pentacycle

#endif  // PENTACYCLE_FIXTURES_HPP
