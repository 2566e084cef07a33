// Command-line surface: thin shell over the library. Subcommands
// modpoly / precompute / verify / classify / trace / count / bench.
// stdout carries exactly one JSON result record; logs go to stderr.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "uegs/error.hpp"
#include "uegs/modular_functions.hpp"
#include "uegs/pipeline.hpp"
#include "uegs/store.hpp"

using namespace uegs;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    std::uint64_t seed = 0xC0FFEE;
    long margin = 16;
    int xi = +1;
    long jobs = 1;
};

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::degenerate_input: return "degenerate_input";
        case ErrorKind::unsupported: return "unsupported";
        case ErrorKind::precision: return "precision";
        case ErrorKind::missing_artifact: return "missing_artifact";
        default: return "internal";
    }
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

ModularPolynomial build_modpoly(long ell) {
    std::cerr << "building modular polynomial for ell = " << ell << "\n";
    return build_canonical_modpoly(ell, modpoly_min_prec(ell));
}

std::vector<RationalRepresentation> load_reps(const std::string& dir, long ell,
                                              const ModularPolynomial& M) {
    std::vector<RationalRepresentation> reps;
    std::error_code ec;
    for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".uegs") continue;
        RationalRepresentation r = load_uegs(entry.path().string());
        if (r.ell != ell) continue;
        if (r.modpoly_hash != modpoly_content_hash(M))
            fail(ErrorKind::missing_artifact,
                 entry.path().string() + ": modpoly_hash mismatch");
        reps.push_back(std::move(r));
    }
    if (ec) fail(ErrorKind::missing_artifact, "cannot read directory: " + dir);
    return reps;
}

// re-check the k = 0 identity sigma = num / (N M') at the stored precision
// plus the margin; a single perturbed coefficient breaks it
void verify_representation(const RationalRepresentation& rep, const ModularPolynomial& M,
                           long margin) {
    long ell = rep.ell;
    long pq = rep.prec + margin;
    SigmaSpec spec = SigmaSpec::make(ell, rep.n, rep.xi);
    QSeries j = standard_series(StandardSeries::J, pq + 2);
    QSeries m = m_ell(ell, pq + 2);
    QSeries m2 = m_ell2_conjugate(ell, 0, pq);
    QSeries sigma0 = sigma_series(spec, 0, ell * pq);
    EvalHooks<QSeries> hooks = series_hooks(rep.n, ell, ell * pq);
    QSeries got = evaluate(rep, M, j.rescaled(ell).truncated(ell * pq),
                           m.rescaled(ell).truncated(ell * pq), m2, hooks);
    long cap = std::min(got.prec(), sigma0.prec());
    auto diff = first_difference(got.truncated(cap), sigma0.truncated(cap));
    if (diff)
        fail(ErrorKind::precision, "verify: identity fails at q-exponent " +
                                       std::to_string(*diff) + "/" + std::to_string(ell));
}

json trace_to_json(const TraceResult& t) {
    json idx = json::array();
    for (const auto& i : t.indices) idx.push_back({{"n", i.n}, {"e", i.e}});
    return json{{"ell", t.ell}, {"r", t.r}, {"indices", idx}, {"t_mod_ell", t.t_mod_ell}};
}

int run(int argc, char** argv) {
    CLI::App app{"universal elliptic Gauss sums: Atkin-prime trace indices"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* s = std::getenv("SEED")) cfg.seed = std::strtoull(s, nullptr, 0);
    if (const char* s = std::getenv("JOBS")) cfg.jobs = std::strtol(s, nullptr, 0);
    app.add_option("--seed", cfg.seed, "seed for randomized factoring")
        ->capture_default_str();
    app.add_option("--jobs", cfg.jobs, "worker count (results are identical for any value)")
        ->capture_default_str();
    app.add_option("--margin", cfg.margin, "extra q-expansion precision for verification")
        ->capture_default_str();
    app.add_option("--xi", cfg.xi, "sign eps in xi = zeta_ell^eps (+1 or -1)")
        ->check(CLI::IsMember({1, -1}))->capture_default_str();
    app.fallthrough();

    long ell = 5, n = 4, p = 0, a = 0, b = 0;
    std::string out_path, in_path, reps_dir;

    auto* c_modpoly = app.add_subcommand("modpoly", "build the canonical modular polynomial");
    c_modpoly->add_option("--ell", ell, "Atkin prime")->required();
    c_modpoly->add_option("-o,--output", out_path, "output .cmp path")->required();

    auto* c_pre = app.add_subcommand("precompute", "build a rational representation (.uegs)");
    c_pre->add_option("--ell", ell, "Atkin prime")->required();
    c_pre->add_option("--n", n, "character order (divides ell - 1)")->required();
    c_pre->add_option("-o,--output", out_path, "output .uegs path");

    auto* c_verify = app.add_subcommand("verify", "re-verify a stored .uegs at extra margin");
    c_verify->add_option("file", in_path, ".uegs file")->required();

    auto* c_classify = app.add_subcommand("classify", "Atkin/Elkies classification");
    c_classify->add_option("--p", p)->required();
    c_classify->add_option("--a", a)->required();
    c_classify->add_option("--b", b)->required();
    c_classify->add_option("--ell", ell)->required();

    auto* c_trace = app.add_subcommand("trace", "Frobenius trace mod ell");
    c_trace->add_option("--p", p)->required();
    c_trace->add_option("--a", a)->required();
    c_trace->add_option("--b", b)->required();
    c_trace->add_option("--ell", ell)->required();
    c_trace->add_option("--reps", reps_dir, "directory of .uegs representations")->required();

    auto* c_count = app.add_subcommand("count", "point count by enumeration");
    c_count->add_option("--p", p)->required();
    c_count->add_option("--a", a)->required();
    c_count->add_option("--b", b)->required();

    auto* c_bench = app.add_subcommand("bench", "multiplication-count cost model");
    c_bench->add_option("--reps", reps_dir, "directory with .uegs for ell = 5, 7, 13")
        ->required();

    CLI11_PARSE(app, argc, argv);

    if (c_modpoly->parsed()) {
        ModularPolynomial M = build_modpoly(ell);
        save_cmp(M, out_path);
        emit(json{{"ell", M.ell},
                  {"v", M.v},
                  {"terms", M.terms.size()},
                  {"hash", std::to_string(modpoly_content_hash(M))},
                  {"path", out_path}});
        return 0;
    }

    if (c_pre->parsed()) {
        ModularPolynomial M = build_modpoly(ell);
        RepresentationPlan plan = RepresentationPlan::make(ell, n, cfg.margin);
        std::cerr << "assembling representation (ell = " << ell << ", n = " << n << ")\n";
        RationalRepresentation rep = assemble_and_verify(plan, cfg.xi, M);
        if (out_path.empty())
            out_path = "uegs_" + std::to_string(ell) + "_" + std::to_string(n) + ".uegs";
        save_uegs(rep, out_path);
        emit(json{{"ell", rep.ell},
                  {"n", rep.n},
                  {"prec", rep.prec},
                  {"tensor_terms", rep.tensor.size()},
                  {"path", out_path}});
        return 0;
    }

    if (c_verify->parsed()) {
        RationalRepresentation rep = load_uegs(in_path);
        ModularPolynomial M = build_modpoly(rep.ell);
        if (rep.modpoly_hash != modpoly_content_hash(M))
            fail(ErrorKind::precision, "verify: modpoly_hash mismatch");
        verify_representation(rep, M, cfg.margin);
        emit(json{{"ell", rep.ell}, {"n", rep.n}, {"verified", true}, {"margin", cfg.margin}});
        return 0;
    }

    if (c_classify->parsed()) {
        ModularPolynomial M = build_modpoly(ell);
        ClassifyResult cls = classify(p, a, b, M);
        emit(json{{"ell", cls.ell},
                  {"kind", cls.kind == CurveKind::atkin ? "atkin" : "elkies"},
                  {"r", cls.r}});
        return 0;
    }

    if (c_trace->parsed()) {
        ModularPolynomial M = build_modpoly(ell);
        std::vector<RationalRepresentation> reps = load_reps(reps_dir, ell, M);
        TraceResult t = trace_mod_ell(p, a, b, ell, reps, M, cfg.seed);
        emit(trace_to_json(t));
        return 0;
    }

    if (c_count->parsed()) {
        long count = brute_force_count(p, a, b);
        emit(json{{"p", p}, {"a", a}, {"b", b}, {"count", count}, {"t", p + 1 - count}});
        return 0;
    }

    if (c_bench->parsed()) {
        // multiplication counts from the evaluate hook; the count depends only
        // on the tensor support and the modular polynomial, not on precision
        struct Row {
            long ell, n, v, mults;
        };
        std::vector<Row> rows;
        for (long l : {5L, 7L, 13L}) {
            ModularPolynomial M = build_modpoly(l);
            std::vector<RationalRepresentation> reps = load_reps(reps_dir, l, M);
            // prefer a representation with a nonempty tensor
            const RationalRepresentation* pick = nullptr;
            for (const auto& r : reps)
                if (!r.tensor.empty() && (!pick || r.n > pick->n)) pick = &r;
            if (!pick)
                fail(ErrorKind::missing_artifact,
                     "bench: no usable representation for ell = " + std::to_string(l));
            long pq = 10;
            QSeries j = standard_series(StandardSeries::J, pq + 2);
            QSeries m = m_ell(l, pq + 2);
            QSeries m2 = m_ell2_conjugate(l, 0, pq);
            EvalHooks<QSeries> hooks = series_hooks(pick->n, l, l * pq);
            (void)evaluate(*pick, M, j.rescaled(l).truncated(l * pq),
                           m.rescaled(l).truncated(l * pq), m2, hooks);
            rows.push_back({l, pick->n, M.v, hooks.mults});
        }
        // least-squares slope of log(mults) against log(ell)
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rows) {
            double x = std::log(static_cast<double>(r.ell));
            double y = std::log(static_cast<double>(r.mults));
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        double k = rows.size();
        double exponent = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        double model = std::pow(13.0 / 5.0, 3) *
                       (static_cast<double>(rows[2].v) / static_cast<double>(rows[0].v));
        double ratio = static_cast<double>(rows[2].mults) / static_cast<double>(rows[0].mults);
        bool cubic_ok = ratio >= model / 3.0 && ratio <= model * 3.0;
        json counts = json::array();
        for (const auto& r : rows)
            counts.push_back({{"ell", r.ell}, {"n", r.n}, {"v", r.v}, {"mults", r.mults}});
        emit(json{{"counts", counts},
                  {"exponent", exponent},
                  {"cubic_ratio", ratio},
                  {"cubic_model", model},
                  {"cubic_ok", cubic_ok},
                  {"jobs", cfg.jobs}});
        if (!cubic_ok) fail(ErrorKind::precision, "bench: cost outside the cubic band");
        return 0;
    }

    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        emit(json{{"error", kind_name(e.kind())}, {"reason", e.reason()}});
        return e.exit_code();
    } catch (const std::exception& e) {
        emit(json{{"error", "internal"}, {"reason", e.what()}});
        return 1;
    }
}
