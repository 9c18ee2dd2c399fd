// sosprep command-line front end.
//
// Subcommands:
//   reduce    prune monomials from an SOS feasibility problem (.poly input)
//   simplify  simplify an SOS program (JSON input), optionally export SDPA
//   screen    fast necessary-condition check for SOS-ness
//   bench     seeded random corpus comparing both reduction methods
//
// Exit codes: 0 success / Pass, 1 usage or parse error, 2 infeasibility
// certificate, 3 screen NotSos.

#include "sosprep/sosprep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace fs = std::filesystem;
using namespace sosprep;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path resolve_out(const std::string& path) {
    fs::path p(path);
    const char* dir = std::getenv("SOSPREP_OUT_DIR");
    if (dir && *dir && p.is_relative()) return fs::path(dir) / p;
    return p;
}

// Write via a temp file and rename, so failures never leave partial output.
void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target = resolve_out(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        write_file_atomic(out_path, content);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

ReductionReport::PerConstraint describe_reduction(const MonomialBasis& initial,
                                                  const MonomialBasis& final_basis) {
    ReductionReport::PerConstraint c;
    c.initial_size = initial.size();
    c.final_size = final_basis.size();
    for (const auto& m : final_basis) c.final_basis.push_back(format_monomial(m));
    return c;
}

ReductionReport run_newton(const Polynomial& p, const MonomialBasis& init,
                           const std::string& digest) {
    auto t0 = std::chrono::steady_clock::now();
    MonomialBasis reduced = newton_reduce(p, init);
    ReductionReport rep;
    rep.input_digest = digest;
    rep.method = "newton";
    rep.status = "reduced";
    auto c = describe_reduction(init, reduced);
    for (const auto& m : init)
        if (!reduced.contains(m)) c.removed.emplace_back(1, format_monomial(m));
    rep.constraints.push_back(std::move(c));
    rep.sweeps = 1;
    rep.wall_time_ms = ms_since(t0);
    return rep;
}

ReductionReport run_zda(const Polynomial& p, const MonomialBasis& init,
                        const std::string& digest) {
    auto t0 = std::chrono::steady_clock::now();
    ZdaResult res = zda_reduce(build_gram_system(p, init));
    ReductionReport rep;
    rep.input_digest = digest;
    rep.method = "zda";
    rep.status = res.status == ZdaStatus::Reduced ? "reduced" : "infeasible";
    if (res.certificate) {
        std::ostringstream os;
        os << "equation for degree " << format_monomial(*res.certificate)
           << " is unsatisfiable";
        rep.certificate = os.str();
    }
    auto c = describe_reduction(init, res.final_basis);
    for (const auto& [sweep, mono] : res.removed) c.removed.emplace_back(sweep, format_monomial(mono));
    rep.constraints.push_back(std::move(c));
    rep.sweeps = res.sweeps;
    rep.wall_time_ms = ms_since(t0);
    return rep;
}

int cmd_reduce(const std::string& input, const std::string& method, const std::string& init_sel,
               const std::string& out_path) {
    Polynomial p = parse_polynomial(read_file(input));
    std::string digest = digest_text(format_polynomial(p));

    if (p.is_zero() || degree(p) % 2 != 0) {
        ReductionReport rep;
        rep.input_digest = digest;
        rep.method = method;
        rep.status = "infeasible";
        rep.certificate = p.is_zero() ? "zero polynomial" : "odd degree polynomial is never SOS";
        emit(out_path, export_report_json(rep));
        return 2;
    }

    MonomialBasis init =
        init_sel == "full" ? full_basis(p.nvars(), degree(p) / 2) : heuristic_init(p);

    int exit_code = 0;
    std::string payload;
    if (method == "newton") {
        payload = export_report_json(run_newton(p, init, digest));
    } else if (method == "zda") {
        ReductionReport rep = run_zda(p, init, digest);
        if (rep.status == "infeasible") exit_code = 2;
        payload = export_report_json(rep);
    } else {  // both
        ReductionReport rn = run_newton(p, init, digest);
        ReductionReport rz = run_zda(p, init, digest);
        if (rz.status == "infeasible") exit_code = 2;
        nlohmann::json j;
        j["input_digest"] = digest;
        j["method"] = "both";
        j["newton"] = nlohmann::json::parse(export_report_json(rn));
        j["zda"] = nlohmann::json::parse(export_report_json(rz));
        bool contained = true;
        for (const auto& m : rz.constraints[0].final_basis) {
            const auto& nb = rn.constraints[0].final_basis;
            if (std::find(nb.begin(), nb.end(), m) == nb.end()) contained = false;
        }
        j["zda_subset_of_newton"] = contained;
        payload = j.dump(2) + "\n";
    }
    emit(out_path, payload);
    return exit_code;
}

int cmd_simplify(const std::string& input, const std::string& out_path,
                 const std::string& sdpa_path) {
    SosProgram prog;
    try {
        prog = parse_program_json(read_file(input));
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto t0 = std::chrono::steady_clock::now();
    ProgramSystem psys = build_program_system(prog);
    std::vector<MonomialBasis> initial = psys.bases;
    SimplificationReport srep = simplify_program(psys);

    ReductionReport rep;
    rep.input_digest = digest_text(read_file(input));
    rep.method = "simplify";
    rep.status = srep.status == SimplifyStatus::Simplified ? "simplified" : "infeasible";
    rep.certificate = srep.certificate;
    for (std::size_t k = 0; k < srep.final_bases.size(); ++k) {
        auto c = describe_reduction(initial[k], srep.final_bases[k]);
        for (const auto& m : srep.removed[k]) c.removed.emplace_back(0, format_monomial(m));
        rep.constraints.push_back(std::move(c));
    }
    rep.zeroed_decision_vars = srep.zeroed_decision_vars;
    rep.sweeps = srep.iterations;
    rep.wall_time_ms = ms_since(t0);
    emit(out_path, export_report_json(rep));

    if (srep.status != SimplifyStatus::Simplified) return 2;
    if (!sdpa_path.empty()) write_file_atomic(sdpa_path, export_sdpa_sparse(to_primal_form(psys)));
    return 0;
}

int cmd_screen(const std::string& input) {
    Polynomial p = parse_polynomial(read_file(input));
    ScreenResult res = even_vertex_screen(p);
    if (res.verdict == ScreenVerdict::Pass) {
        std::cout << "Pass\n";
        return 0;
    }
    if (res.reason == ScreenReason::OddDegree)
        std::cout << "NotSos(OddDegree)\n";
    else
        std::cout << "NotSos(OddVertex " << format_monomial(*res.vertex) << ")\n";
    return 3;
}

Polynomial random_even_poly(std::mt19937_64& rng, int n, int deg, int terms) {
    std::uniform_int_distribution<int> coef(1, 9);
    std::uniform_int_distribution<int> coin(0, 1);
    auto random_vec = [&](int maxdeg) {
        DegreeVector v(n, 0);
        std::uniform_int_distribution<int> d(0, maxdeg);
        int budget = d(rng);
        for (int i = 0; i < n && budget > 0; ++i) {
            std::uniform_int_distribution<int> e(0, budget);
            v[i] = (i + 1 == n) ? budget : e(rng);
            budget -= v[i];
        }
        return v;
    };
    Polynomial p(n);
    // anchor term: all-even exponents of full degree, so deg(p) is even
    DegreeVector anchor(n, 0);
    int half = deg / 2, i = 0;
    std::uniform_int_distribution<int> pick(0, n - 1);
    while (i < half) {
        anchor[pick(rng)] += 1;
        ++i;
    }
    for (int& e : anchor) e *= 2;
    p.add_term(anchor, Rat(coef(rng)));
    while (static_cast<int>(p.terms().size()) < terms) {
        DegreeVector v = random_vec(deg);
        Rat c(coin(rng) ? coef(rng) : -coef(rng));
        if (p.coefficient(v) == 0) p.add_term(v, c);
    }
    return p;
}

int cmd_bench(int n, int deg, int terms, int count, std::uint64_t seed,
              const std::string& out_path) {
    if (deg % 2 != 0) {
        std::cerr << "error: --deg must be even\n";
        return 1;
    }
    std::mt19937_64 rng(seed);
    nlohmann::json j;
    j["params"] = {{"n", n}, {"deg", deg}, {"terms", terms}, {"count", count}, {"seed", seed}};
    j["instances"] = nlohmann::json::array();
    int violations = 0;
    for (int i = 0; i < count; ++i) {
        Polynomial p = random_even_poly(rng, n, deg, terms);
        MonomialBasis init = heuristic_init(p);

        auto t0 = std::chrono::steady_clock::now();
        MonomialBasis nb = newton_reduce(p, init);
        double newton_ms = ms_since(t0);

        t0 = std::chrono::steady_clock::now();
        ZdaResult zr = zda_reduce(build_gram_system(p, init));
        double zda_ms = ms_since(t0);

        bool contained = true;
        for (const auto& m : zr.final_basis)
            if (!nb.contains(m)) contained = false;
        if (!contained) ++violations;

        j["instances"].push_back({{"poly", format_polynomial(p)},
                                  {"initial_size", init.size()},
                                  {"newton_size", nb.size()},
                                  {"zda_size", zr.final_basis.size()},
                                  {"zda_status", zr.status == ZdaStatus::Reduced ? "reduced"
                                                                                 : "infeasible"},
                                  {"zda_subset_of_newton", contained},
                                  {"newton_ms", newton_ms},
                                  {"zda_ms", zda_ms}});
    }
    j["containment_violations"] = violations;
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monomial pruning and simplification for SOS programs"};
    app.require_subcommand(1);

    std::string input, out_path, sdpa_path;
    std::string method = "both", init_sel = "heuristic";

    auto* reduce = app.add_subcommand("reduce", "prune monomials from an SOS decomposition");
    reduce->add_option("input", input, "polynomial file (.poly)")->required();
    reduce->add_option("--method", method)->check(CLI::IsMember({"newton", "zda", "both"}));
    reduce->add_option("--init", init_sel)->check(CLI::IsMember({"full", "heuristic"}));
    reduce->add_option("--out", out_path, "report JSON path (default: stdout)");

    auto* simplify = app.add_subcommand("simplify", "simplify an SOS program");
    simplify->add_option("input", input, "program JSON file")->required();
    simplify->add_option("--out", out_path, "report JSON path (default: stdout)");
    simplify->add_option("--sdpa", sdpa_path, "also export SDPA sparse (.dat-s)");

    auto* screen = app.add_subcommand("screen", "even-vertex SOS screen");
    screen->add_option("input", input, "polynomial file (.poly)")->required();

    int n = 2, deg = 4, terms = 6, count = 10;
    std::uint64_t seed = 0;
    auto* bench = app.add_subcommand("bench", "random corpus comparing reduction methods");
    bench->add_option("--n", n)->check(CLI::Range(1, 8));
    bench->add_option("--deg", deg)->check(CLI::Range(0, 16));
    bench->add_option("--terms", terms)->check(CLI::PositiveNumber);
    bench->add_option("--count", count)->check(CLI::NonNegativeNumber);
    bench->add_option("--seed", seed);
    bench->add_option("--out", out_path, "report JSON path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(input, method, init_sel, out_path);
        if (simplify->parsed()) return cmd_simplify(input, out_path, sdpa_path);
        if (screen->parsed()) return cmd_screen(input);
        if (bench->parsed()) return cmd_bench(n, deg, terms, count, seed, out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
