#pragma once

#include "sosprep/gram.hpp"
#include "sosprep/simplify.hpp"
#include "sosprep/zda.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <tuple>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sosprep {

// Primal-form SDP data: linear equality rows over [free; vec(Q_1); ...]
// with each Q_k constrained to the PSD cone. vec() is the full column
// stacking, so symmetric off-diagonal coefficients appear at both (i,j)
// and (j,i) positions.
struct PrimalSdpData {
    std::size_t nfree = 0;
    std::vector<std::size_t> blocks;  // PSD block dimensions
    struct Row {
        std::map<std::size_t, Rat> coeffs;
        Rat rhs;
    };
    std::vector<Row> rows;
    std::vector<Rat> cost;  // over the free slots

    std::size_t block_offset(std::size_t k) const {
        std::size_t off = nfree;
        for (std::size_t b = 0; b < k; ++b) off += blocks[b] * blocks[b];
        return off;
    }
    std::size_t ncols() const { return block_offset(blocks.size()); }
};

class InfeasibleSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reduced Gram system (no decision variables) to primal form: one PSD block
// over the active basis. Refuses systems carrying an infeasibility
// certificate (an emptied equation with nonzero rhs).
inline PrimalSdpData to_primal_form(const GramConstraintSystem& csys) {
    for (const auto& eq : csys.equations())
        if (eq.entries.empty() && eq.rhs != 0)
            throw InfeasibleSystemError("system is infeasible: an equation reduces to 0 = " +
                                        rational_to_string(eq.rhs));
    std::vector<std::size_t> remap(csys.basis().size());
    std::size_t dim = 0;
    for (std::size_t i = 0; i < csys.basis().size(); ++i)
        if (csys.is_active(i)) remap[i] = dim++;

    PrimalSdpData data;
    data.nfree = 0;
    if (dim > 0) data.blocks.push_back(dim);
    for (const auto& eq : csys.equations()) {
        if (eq.entries.empty()) continue;
        PrimalSdpData::Row row;
        for (const auto& e : eq.entries) {
            std::size_t i = remap[e.i], j = remap[e.j];
            row.coeffs[i * dim + j] += 1;
            if (i != j) row.coeffs[j * dim + i] += 1;
        }
        row.rhs = eq.rhs;
        data.rows.push_back(std::move(row));
    }
    return data;
}

// Simplified program system to primal form: zeroed slots are dropped, each
// constraint becomes one PSD block over its surviving monomials, surviving
// decision variables stay free.
inline PrimalSdpData to_primal_form(const ProgramSystem& psys) {
    for (const auto& eq : psys.equations) {
        bool any = false;
        for (const auto& [slot, c] : eq.entries)
            if (psys.sign[slot] != Mark::Zero && c != 0) any = true;
        if (!any && eq.rhs != 0)
            throw InfeasibleSystemError("system is infeasible: an equation reduces to 0 = " +
                                        rational_to_string(eq.rhs));
    }

    PrimalSdpData data;
    std::vector<std::size_t> free_remap(psys.layout.ndecs(), SIZE_MAX);
    for (std::size_t j = 0; j < psys.layout.ndecs(); ++j) {
        if (psys.sign[j] == Mark::Zero) continue;
        free_remap[j] = data.nfree++;
        data.cost.push_back(psys.cost[j]);
    }

    // Surviving basis entries per constraint: a monomial survives unless its
    // diagonal slot was zeroed.
    std::vector<std::vector<std::size_t>> remap(psys.bases.size());
    std::vector<std::size_t> block_of(psys.bases.size(), SIZE_MAX);
    for (std::size_t k = 0; k < psys.bases.size(); ++k) {
        remap[k].assign(psys.bases[k].size(), SIZE_MAX);
        std::size_t dim = 0;
        for (std::size_t i = 0; i < psys.bases[k].size(); ++i)
            if (psys.sign[psys.layout.gram_slot(k, i, i)] != Mark::Zero) remap[k][i] = dim++;
        if (dim > 0) {
            block_of[k] = data.blocks.size();
            data.blocks.push_back(dim);
        }
    }

    for (const auto& eq : psys.equations) {
        PrimalSdpData::Row row;
        for (const auto& [slot, c] : eq.entries) {
            if (psys.sign[slot] == Mark::Zero || c == 0) continue;
            auto loc = psys.layout.locate(slot);
            if (loc.is_dec) {
                row.coeffs[free_remap[loc.dec]] += c;
            } else {
                std::size_t dim = data.blocks[block_of[loc.k]];
                std::size_t off = data.block_offset(block_of[loc.k]);
                std::size_t i = remap[loc.k][loc.i], j = remap[loc.k][loc.j];
                row.coeffs[off + i * dim + j] += 1;
                if (i != j) row.coeffs[off + j * dim + i] += 1;
            }
        }
        if (row.coeffs.empty()) continue;
        row.rhs = eq.rhs;
        data.rows.push_back(std::move(row));
    }
    return data;
}

// SDPA sparse (.dat-s) text. Equality rows become the constraint matrices,
// the rhs vector becomes the c line. Free variables have no native cone in
// SDPA, so each is split as d = d+ - d- across a trailing diagonal block.
// With an all-zero cost the objective matrix is the identity on the PSD
// blocks (minimum-trace feasibility); otherwise the cost lands on the
// split-variable block.
inline std::string export_sdpa_sparse(const PrimalSdpData& data) {
    std::ostringstream out;
    if (data.nfree > 0)
        out << "\"free variables split as d = d+ - d- in the trailing diagonal block\n";
    out << data.rows.size() << "\n";
    std::size_t nblock = data.blocks.size() + (data.nfree > 0 ? 1 : 0);
    out << nblock << "\n";
    for (std::size_t b = 0; b < data.blocks.size(); ++b) out << (b ? " " : "") << data.blocks[b];
    if (data.nfree > 0) out << (data.blocks.empty() ? "" : " ") << "-" << 2 * data.nfree;
    out << "\n";
    for (std::size_t r = 0; r < data.rows.size(); ++r)
        out << (r ? " " : "") << rational_to_decimal(data.rows[r].rhs);
    out << "\n";

    bool zero_cost = true;
    for (const auto& c : data.cost)
        if (c != 0) zero_cost = false;

    // matrix 0 (objective)
    if (zero_cost) {
        for (std::size_t b = 0; b < data.blocks.size(); ++b)
            for (std::size_t i = 1; i <= data.blocks[b]; ++i)
                out << "0 " << b + 1 << " " << i << " " << i << " 1.0\n";
    } else {
        for (std::size_t f = 0; f < data.nfree; ++f) {
            if (data.cost[f] == 0) continue;
            out << "0 " << data.blocks.size() + 1 << " " << 2 * f + 1 << " " << 2 * f + 1 << " "
                << rational_to_decimal(-data.cost[f]) << "\n";
            out << "0 " << data.blocks.size() + 1 << " " << 2 * f + 2 << " " << 2 * f + 2 << " "
                << rational_to_decimal(data.cost[f]) << "\n";
        }
    }

    // constraint matrices, upper triangle only
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rat> psd_entries;
        std::vector<std::pair<std::size_t, Rat>> lp_entries;
        for (const auto& [col, v] : data.rows[r].coeffs) {
            if (col < data.nfree) {
                lp_entries.emplace_back(2 * col + 1, v);
                lp_entries.emplace_back(2 * col + 2, -v);
                continue;
            }
            std::size_t off = data.nfree, blk = 0;
            while (col >= off + data.blocks[blk] * data.blocks[blk]) {
                off += data.blocks[blk] * data.blocks[blk];
                ++blk;
            }
            std::size_t rel = col - off, dim = data.blocks[blk];
            std::size_t i = rel / dim, j = rel % dim;
            if (i > j) continue;  // symmetric partner already covers it
            psd_entries[{blk, i, j}] = v;
        }
        for (const auto& [key, v] : psd_entries) {
            auto [blk, i, j] = key;
            out << r + 1 << " " << blk + 1 << " " << i + 1 << " " << j + 1 << " "
                << rational_to_decimal(v) << "\n";
        }
        for (const auto& [pos, v] : lp_entries)
            out << r + 1 << " " << data.blocks.size() + 1 << " " << pos << " " << pos << " "
                << rational_to_decimal(v) << "\n";
    }
    return out.str();
}

// -------- reduction reports --------

struct ReductionReport {
    std::string input_digest;
    std::string method;  // newton | zda | both | simplify
    struct PerConstraint {
        std::size_t initial_size = 0;
        std::size_t final_size = 0;
        std::vector<std::string> final_basis;                      // formatted monomials
        std::vector<std::pair<std::size_t, std::string>> removed;  // (sweep, monomial)
        bool operator==(const PerConstraint&) const = default;
    };
    std::vector<PerConstraint> constraints;
    std::vector<std::size_t> zeroed_decision_vars;  // 1-based, simplify only
    std::size_t sweeps = 0;
    std::string status;       // "reduced" | "simplified" | "infeasible"
    std::string certificate;  // detail on infeasibility
    double wall_time_ms = 0;

    bool operator==(const ReductionReport&) const = default;
};

inline std::string format_monomial(const DegreeVector& alpha) {
    Polynomial p(static_cast<int>(alpha.size()));
    p.add_term(alpha, Rat(1));
    return format_polynomial(p);
}

// FNV-1a 64 over the canonical input text.
inline std::string digest_text(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

inline std::string export_report_json(const ReductionReport& rep) {
    nlohmann::json j;
    j["certificate"] = rep.certificate;
    j["constraints"] = nlohmann::json::array();
    for (const auto& c : rep.constraints) {
        nlohmann::json jc;
        jc["initial_size"] = c.initial_size;
        jc["final_size"] = c.final_size;
        jc["final_basis"] = c.final_basis;
        jc["removed"] = nlohmann::json::array();
        for (const auto& [sweep, mono] : c.removed)
            jc["removed"].push_back({{"monomial", mono}, {"sweep", sweep}});
        j["constraints"].push_back(std::move(jc));
    }
    j["input_digest"] = rep.input_digest;
    j["method"] = rep.method;
    j["status"] = rep.status;
    j["sweeps"] = rep.sweeps;
    j["wall_time_ms"] = rep.wall_time_ms;
    j["zeroed_decision_vars"] = rep.zeroed_decision_vars;
    return j.dump(2) + "\n";
}

inline ReductionReport parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ReductionReport rep;
    rep.certificate = j.at("certificate").get<std::string>();
    rep.input_digest = j.at("input_digest").get<std::string>();
    rep.method = j.at("method").get<std::string>();
    rep.status = j.at("status").get<std::string>();
    rep.sweeps = j.at("sweeps").get<std::size_t>();
    rep.wall_time_ms = j.at("wall_time_ms").get<double>();
    rep.zeroed_decision_vars = j.at("zeroed_decision_vars").get<std::vector<std::size_t>>();
    for (const auto& jc : j.at("constraints")) {
        ReductionReport::PerConstraint c;
        c.initial_size = jc.at("initial_size").get<std::size_t>();
        c.final_size = jc.at("final_size").get<std::size_t>();
        c.final_basis = jc.at("final_basis").get<std::vector<std::string>>();
        for (const auto& jr : jc.at("removed"))
            c.removed.emplace_back(jr.at("sweep").get<std::size_t>(),
                                   jr.at("monomial").get<std::string>());
        rep.constraints.push_back(std::move(c));
    }
    return rep;
}

// -------- SOS program JSON --------

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// { "nvars": int, "ndecs": int, "cost": [rational-string],
//   "constraints": [ { "parts": [poly-string x (ndecs+1)] } ] }
inline SosProgram parse_program_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    auto require = [&](const nlohmann::json& obj, const char* key,
                       const std::string& path) -> const nlohmann::json& {
        if (!obj.contains(key)) throw SchemaError("missing field " + path + key);
        return obj.at(key);
    };

    SosProgram prog;
    const auto& jnv = require(j, "nvars", "/");
    if (!jnv.is_number_integer() || jnv.get<int>() < 1)
        throw SchemaError("/nvars must be a positive integer");
    prog.nvars = jnv.get<int>();
    const auto& jnd = require(j, "ndecs", "/");
    if (!jnd.is_number_integer() || jnd.get<int>() < 0)
        throw SchemaError("/ndecs must be a nonnegative integer");
    prog.ndecs = jnd.get<int>();

    const auto& jcost = require(j, "cost", "/");
    if (!jcost.is_array() || static_cast<int>(jcost.size()) != prog.ndecs)
        throw SchemaError("/cost must be an array of length ndecs");
    for (std::size_t i = 0; i < jcost.size(); ++i) {
        if (!jcost[i].is_string())
            throw SchemaError("/cost/" + std::to_string(i) + " must be a rational string");
        try {
            prog.cost.push_back(parse_rational(jcost[i].get<std::string>()));
        } catch (const std::exception& e) {
            throw SchemaError("/cost/" + std::to_string(i) + ": " + e.what());
        }
    }

    const auto& jcons = require(j, "constraints", "/");
    if (!jcons.is_array() || jcons.empty())
        throw SchemaError("/constraints must be a non-empty array");
    for (std::size_t k = 0; k < jcons.size(); ++k) {
        std::string path = "/constraints/" + std::to_string(k) + "/";
        const auto& jparts = require(jcons[k], "parts", path);
        if (!jparts.is_array() || static_cast<int>(jparts.size()) != prog.ndecs + 1)
            throw SchemaError(path + "parts must be an array of length ndecs+1");
        AffineSosConstraint c;
        for (std::size_t i = 0; i < jparts.size(); ++i) {
            std::string ppath = path + "parts/" + std::to_string(i);
            if (!jparts[i].is_string()) throw SchemaError(ppath + " must be a polynomial string");
            std::string s = jparts[i].get<std::string>();
            try {
                c.parts.push_back(s == "0" ? Polynomial(prog.nvars)
                                           : parse_polynomial(s, prog.nvars));
            } catch (const std::exception& e) {
                throw SchemaError(ppath + ": " + e.what());
            }
        }
        prog.constraints.push_back(std::move(c));
    }
    return prog;
}

}  // namespace sosprep
