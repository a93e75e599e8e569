/*
   Copyright 2026 The toroidal authors

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

#ifndef TOROIDAL_REPORT_HPP
#define TOROIDAL_REPORT_HPP

#include <json.hpp>

#include <string>

#include "toroidal/folding.hpp"
#include "toroidal/mry.hpp"
#include "toroidal/uce.hpp"

namespace toroidal {

// Reports use insertion-ordered JSON so identical jobs serialize to
// byte-identical files (modulo the generated_at stamp).
using Json = nlohmann::ordered_json;

inline Json to_json(const Matrix<long>& m) {
    Json j = Json::array();
    for (const auto& row : m) j.push_back(row);
    return j;
}

inline Json to_json(const Matrix<Rational>& m) {
    Json j = Json::array();
    for (const auto& row : m) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_string(x));
        j.push_back(std::move(r));
    }
    return j;
}

/// Sorted term list with exact coefficient strings.
inline Json to_json(const ToroidalAlgebra& T, const ToroidalElement& e) {
    Json terms = Json::array();
    for (const auto& [key, v] : e.loop)
        for (const auto& [idx, c] : v) {
            Json t;
            t["t1"] = key.first;
            t["t2"] = key.second;
            t["basis"] = T.A.g.name(idx);
            t["coeff"] = c.to_string();
            terms.push_back(std::move(t));
        }
    for (const auto& [key, cc] : e.center) {
        if (!cc.first.is_zero()) {
            Json t;
            t["t1"] = key.first;
            t["t2"] = key.second;
            t["basis"] = "k1";
            t["coeff"] = cc.first.to_string();
            terms.push_back(std::move(t));
        }
        if (!cc.second.is_zero()) {
            Json t;
            t["t1"] = key.first;
            t["t2"] = 0;
            t["basis"] = "k2";
            t["coeff"] = cc.second.to_string();
            terms.push_back(std::move(t));
        }
    }
    return terms;
}

/// Full structure-constant table of a finite algebra: basis names, sparse
/// brackets and the invariant form, with exact coefficient strings.
inline Json to_json(const LieTable& T) {
    Json j;
    j["type"] = T.type.str();
    j["dim"] = T.dim();
    j["rank"] = T.rank;
    Json names = Json::array();
    for (int i = 0; i < T.dim(); ++i) names.push_back(T.name(i));
    j["basis"] = std::move(names);
    Json brackets = Json::array();
    for (int a = 0; a < T.dim(); ++a)
        for (int b = 0; b < T.dim(); ++b) {
            const LieVec& v = T.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (v.empty()) continue;
            Json entry;
            entry["i"] = a;
            entry["j"] = b;
            Json terms = Json::array();
            for (const auto& [t, c] : v) terms.push_back({{"basis", t}, {"coeff", c.to_string()}});
            entry["value"] = std::move(terms);
            brackets.push_back(std::move(entry));
        }
    j["brackets"] = std::move(brackets);
    Json form = Json::array();
    for (int a = 0; a < T.dim(); ++a)
        for (int b = a; b < T.dim(); ++b) {
            const CycNum& f = T.form_mat[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (f.is_zero()) continue;
            form.push_back({{"i", a}, {"j", b}, {"value", f.to_string()}});
        }
    j["form"] = std::move(form);
    return j;
}

inline Json to_json(const FoldedData& fd) {
    Json j;
    j["parent"] = fd.parent.label;
    j["mu"] = perm_to_string(fd.mu);
    j["order"] = fd.N;
    j["representatives"] = fd.rep_list;
    Json orbits = Json::array();
    for (const auto& orb : fd.orbits) orbits.push_back(orb);
    j["orbits"] = std::move(orbits);
    j["s"] = fd.s;
    j["orbit_sizes"] = fd.orbit_count;
    j["d"] = fd.d;
    j["folded_matrix"] = to_json(fd.folded_matrix);
    j["folded_label"] = fd.folded_label;
    j["alpha_check_columns"] = to_json(fd.alpha_check);
    j["gram"] = to_json(fd.gram);
    return j;
}

inline Json to_json(const ToroidalAlgebra& T, const RelationReport& r) {
    Json j;
    j["tag"] = r.tag;
    j["indices"] = r.indices;
    j["holds"] = r.holds;
    if (!r.holds) {
        j["lhs"] = to_json(T, r.lhs);
        j["rhs"] = to_json(T, r.rhs);
        j["discrepancy"] = to_json(T, r.discrepancy);
    }
    if (r.corrected_rhs_matches) j["corrected_rhs_matches"] = *r.corrected_rhs_matches;
    if (r.printed_rhs_matches) j["printed_rhs_matches"] = *r.printed_rhs_matches;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline Json to_json(const AuditRow& row) {
    Json j;
    j["alpha"] = row.alpha;
    j["p"] = row.p;
    j["predicted_dim"] = row.predicted ? 1 : 0;
    j["computed_dim"] = row.computed;
    j["ok"] = row.ok;
    return j;
}

inline Json to_json(const MultiloopSlice& s) {
    Json j;
    j["periods"] = s.periods;
    Json dims = Json::array();
    for (const auto& [tuple, dim] : s.dims) {
        Json cell;
        cell["degrees"] = tuple;
        cell["dim"] = dim;
        dims.push_back(std::move(cell));
    }
    j["dims"] = std::move(dims);
    j["total"] = s.total;
    j["fixed_point_consistent"] = s.fixed_point_consistent;
    return j;
}

}  // namespace toroidal

#endif  // TOROIDAL_REPORT_HPP
