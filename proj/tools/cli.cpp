#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "eggdomain/acceptance.hpp"
#include "eggdomain/cartan.hpp"
#include "eggdomain/classifier.hpp"
#include "eggdomain/coefficients.hpp"
#include "eggdomain/errors.hpp"
#include "eggdomain/kernel.hpp"
#include "eggdomain/repcoords.hpp"
#include "eggdomain/series.hpp"
#include "eggdomain/version.hpp"

namespace eggcli {

using nlohmann::json;
using namespace eggdomain;

namespace {

constexpr std::uint64_t kDefaultSeed = 1729;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string iso_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json point_json(const DomainPoint& p) {
    json arr = json::array();
    arr.push_back(complex_json(p.W()));
    for (const cplx& z : p.Z()) arr.push_back(complex_json(z));
    return arr;
}

cplx parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("expected a complex number as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

DomainPoint parse_point(const EggDomainSpec& spec, const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw ValidationError("point is not valid JSON: " + text);
    if (!j.is_array() || static_cast<int>(j.size()) != spec.n + 1)
        throw ValidationError("point must be an array of n+1 [re, im] pairs");
    cplx W = parse_complex(j[0]);
    std::vector<cplx> Z;
    for (int k = 1; k <= spec.n; ++k) Z.push_back(parse_complex(j[k]));
    return DomainPoint(spec, W, std::move(Z));
}

// RunRecord header: a comment line carrying the reproduction record; the
// payload that follows is bit-for-bit reproducible for fixed flags and seed.
void emit_header(std::ostream& os, const std::string& sub, const json& config,
                 std::uint64_t seed) {
    json rec{{"subcommand", sub},
             {"config", config},
             {"version", eggdomain::version},
             {"seed", seed},
             {"timestamp", iso_timestamp()}};
    os << "# " << rec.dump() << "\n";
}

// payload sink: stdout by default, a file when --output is given
struct Sink {
    std::string path;
    std::ostream& fallback;

    void write(const std::string& text) const {
        if (path.empty()) {
            fallback << text;
        } else {
            std::ofstream f(path, std::ios::trunc);
            if (!f) throw ValidationError("cannot open output file: " + path);
            f << text;
        }
    }
};

json margin_json(double margin) {
    if (std::isfinite(margin)) return margin;
    return nullptr; // no fiber roots at all (ball-like case)
}

struct CommonFlags {
    int n = 1;
    double K = 1.0;
    std::string output;
};

void add_domain_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--n", flags.n, "base ball dimension (>= 1)")->required();
    cmd->add_option("--K", flags.K, "fiber exponent (> 0)")->required();
    cmd->add_option("--output", flags.output, "write payload to a file instead of stdout");
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bergman kernel evaluation and Lu Qi-Keng classification for egg domains"};
    app.set_version_flag("--version", std::string(eggdomain::version));
    app.require_subcommand(1);

    // coeffs
    CommonFlags co;
    std::string co_format = "json";
    auto* coeffs_cmd = app.add_subcommand("coeffs", "kernel coefficient vector b_0..b_{n+1}");
    add_domain_flags(coeffs_cmd, co);
    coeffs_cmd->add_option("--format", co_format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    // kernel-eval
    CommonFlags ke;
    std::string ke_p, ke_q;
    auto* kernel_cmd = app.add_subcommand("kernel-eval", "closed-form kernel at a point pair");
    add_domain_flags(kernel_cmd, ke);
    kernel_cmd->add_option("--p", ke_p, "first point as JSON [[re,im],...] (W first)")->required();
    kernel_cmd->add_option("--q", ke_q, "second point as JSON [[re,im],...]")->required();

    // oracle-diff
    CommonFlags od;
    std::string od_p, od_q;
    int od_max = 80, od_step = 5;
    auto* oracle_cmd =
        app.add_subcommand("oracle-diff", "series oracle vs closed form across cutoffs (CSV)");
    add_domain_flags(oracle_cmd, od);
    oracle_cmd->add_option("--p", od_p, "first point as JSON")->required();
    oracle_cmd->add_option("--q", od_q, "second point as JSON")->required();
    oracle_cmd->add_option("--max-cutoff", od_max, "largest cutoff (default 80)");
    oracle_cmd->add_option("--step", od_step, "cutoff step between CSV rows (default 5)");

    // classify
    CommonFlags cl;
    double cl_tol = 1e-9;
    auto* classify_cmd = app.add_subcommand("classify", "Lu Qi-Keng status of Y(n; K)");
    add_domain_flags(classify_cmd, cl);
    classify_cmd->add_option("--tol", cl_tol, "admissibility tolerance (default 1e-9)");

    // sweep
    int sw_n = 1;
    double sw_lo = 0.0, sw_hi = 0.0, sw_prec = 1e-6;
    int sw_grid = 33;
    std::string sw_output;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "bisection threshold sweep of the margin over K");
    sweep_cmd->add_option("--n", sw_n, "base ball dimension")->required();
    sweep_cmd->add_option("--k-lo", sw_lo, "bracket lower end")->required();
    sweep_cmd->add_option("--k-hi", sw_hi, "bracket upper end")->required();
    sweep_cmd->add_option("--precision", sw_prec, "bracket width target (default 1e-6)");
    sweep_cmd->add_option("--grid", sw_grid, "pre-scan grid points recorded for plotting");
    sweep_cmd->add_option("--output", sw_output, "write payload to a file instead of stdout");

    // zero-locus
    CommonFlags zl;
    double zl_tol = 1e-9;
    std::vector<double> zl_s;
    auto* zero_cmd =
        app.add_subcommand("zero-locus", "witness zero locus and a pair realizing it");
    add_domain_flags(zero_cmd, zl);
    zero_cmd->add_option("--tol", zl_tol, "classification tolerance");
    zero_cmd->add_option("--s", zl_s, "witness s as two reals: re im (default: classifier output)")
        ->expected(2);

    // rep-coords
    CommonFlags rc;
    std::string rc_base, rc_point;
    auto* rep_cmd =
        app.add_subcommand("rep-coords", "representative coordinates of a point at a base");
    add_domain_flags(rep_cmd, rc);
    rep_cmd->add_option("--base", rc_base, "base point as JSON")->required();
    rep_cmd->add_option("--point", rc_point, "evaluation point as JSON")->required();

    // hua-check
    std::string hc_input = "-", hc_output;
    auto* hua_cmd = app.add_subcommand("hua-check", "Hua-construction membership from JSON");
    hua_cmd->add_option("--input", hc_input, "JSON description file, or - for stdin");
    hua_cmd->add_option("--output", hc_output, "write payload to a file instead of stdout");

    // verify
    std::uint64_t vf_seed = kDefaultSeed;
    int vf_threads = 1;
    std::string vf_output;
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suite");
    verify_cmd->add_option("--seed", vf_seed, "Monte-Carlo seed (default 1729)");
    verify_cmd->add_option("--threads", vf_threads, "Monte-Carlo shards (default 1)");
    verify_cmd->add_option("--output", vf_output, "write payload to a file instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << eggdomain::version << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 64;
    }

    try {
        if (*coeffs_cmd) {
            EggDomainSpec spec(co.n, co.K);
            auto coeffs = kernel_coefficients(spec);
            std::ostringstream os;
            emit_header(os, "coeffs",
                        {{"n", co.n}, {"K", co.K}, {"format", co_format}}, kDefaultSeed);
            if (co_format == "json") {
                json j{{"n", spec.n}, {"K", spec.K}, {"b", coeffs.b}};
                os << j.dump() << "\n";
            } else {
                os << "i,b\n";
                for (std::size_t i = 0; i < coeffs.b.size(); ++i)
                    os << i << "," << fmt17(coeffs.b[i]) << "\n";
            }
            Sink{co.output, out}.write(os.str());
            return 0;
        }

        if (*kernel_cmd) {
            EggDomainSpec spec(ke.n, ke.K);
            PointPair pair(parse_point(spec, ke_p), parse_point(spec, ke_q));
            KernelValue kv = eval_kernel(spec, pair);
            std::ostringstream os;
            emit_header(os, "kernel-eval",
                        {{"n", ke.n}, {"K", ke.K}, {"p", ke_p}, {"q", ke_q}}, kDefaultSeed);
            json j{{"value", complex_json(kv.value)},
                   {"X", complex_json(kv.X)},
                   {"Y", complex_json(kv.Y)}};
            os << j.dump() << "\n";
            Sink{ke.output, out}.write(os.str());
            return 0;
        }

        if (*oracle_cmd) {
            EggDomainSpec spec(od.n, od.K);
            if (od_max < 2 || od_step < 1)
                throw ValidationError("oracle-diff: need --max-cutoff >= 2 and --step >= 1");
            PointPair pair(parse_point(spec, od_p), parse_point(spec, od_q));
            BergmanKernel kernel(spec);
            const cplx closed = kernel.eval(pair).value;
            const auto shells = series_shell_sums(spec, pair, od_max);
            std::ostringstream os;
            emit_header(os, "oracle-diff",
                        {{"n", od.n},
                         {"K", od.K},
                         {"p", od_p},
                         {"q", od_q},
                         {"max_cutoff", od_max},
                         {"step", od_step}},
                        kDefaultSeed);
            os << "cutoff,series_re,series_im,closed_re,closed_im,rel_diff\n";
            cplx partial = 0.0;
            int next_row = od_step;
            for (int d = 0; d <= od_max; ++d) {
                partial += shells[d];
                if (d == od_max || d == next_row) {
                    os << d << "," << fmt17(partial.real()) << "," << fmt17(partial.imag()) << ","
                       << fmt17(closed.real()) << "," << fmt17(closed.imag()) << ","
                       << fmt17(std::abs(partial - closed) / std::abs(closed)) << "\n";
                    while (next_row <= d) next_row += od_step;
                }
            }
            Sink{od.output, out}.write(os.str());
            return 0;
        }

        if (*classify_cmd) {
            EggDomainSpec spec(cl.n, cl.K);
            auto r = classify(spec, cl_tol);
            std::ostringstream os;
            emit_header(os, "classify", {{"n", cl.n}, {"K", cl.K}, {"tol", cl_tol}},
                        kDefaultSeed);
            json witnesses = json::array();
            for (cplx w : r.witness_roots) witnesses.push_back(complex_json(w));
            json roots = json::array();
            for (cplx s : r.roots_s) roots.push_back(complex_json(s));
            json j{{"status", to_string(r.status)},
                   {"margin", margin_json(r.margin)},
                   {"witnesses", witnesses},
                   {"roots", roots}};
            os << j.dump() << "\n";
            Sink{cl.output, out}.write(os.str());
            switch (r.status) {
                case LuQiKengStatus::LuQiKeng: return 0;
                case LuQiKengStatus::NotLuQiKeng: return 1;
                case LuQiKengStatus::Borderline: return 2;
            }
        }

        if (*sweep_cmd) {
            auto report = threshold_sweep(sw_n, {sw_lo, sw_hi}, sw_prec, sw_grid);
            std::ostringstream os;
            emit_header(os, "sweep",
                        {{"n", sw_n},
                         {"k_lo", sw_lo},
                         {"k_hi", sw_hi},
                         {"precision", sw_prec},
                         {"grid", sw_grid}},
                        kDefaultSeed);
            os << "K,margin\n";
            for (auto [K, margin] : report.samples)
                os << fmt17(K) << "," << fmt17(margin) << "\n";
            json j{{"n", report.n},
                   {"K_star", report.K_star},
                   {"bracket", {report.bracket.first, report.bracket.second}},
                   {"precision", sw_prec}};
            os << j.dump() << "\n";
            Sink{sw_output, out}.write(os.str());
            return 0;
        }

        if (*zero_cmd) {
            EggDomainSpec spec(zl.n, zl.K);
            auto r = classify(spec, zl_tol);
            std::ostringstream os;
            json config{{"n", zl.n}, {"K", zl.K}, {"tol", zl_tol}};
            if (!zl_s.empty()) config["s"] = zl_s;
            emit_header(os, "zero-locus", config, kDefaultSeed);

            json j;
            j["status"] = to_string(r.status);
            if (!zl_s.empty() || !r.witness_roots.empty()) {
                const cplx s = zl_s.empty() ? r.witness_roots.front() : cplx(zl_s[0], zl_s[1]);
                ZeroLocus locus(spec, s); // throws InadmissibleWitness for |s| >= 1
                BergmanKernel kernel(spec);
                PointPair pair = locus.fiber_pair();
                const double normalized =
                    std::abs(kernel.eval(pair).value) /
                    std::sqrt(kernel.diagonal(pair.p) * kernel.diagonal(pair.q));
                j["witness"] = complex_json(s);
                j["pair"] = {{"p", point_json(pair.p)}, {"q", point_json(pair.q)}};
                j["normalized_kernel"] = normalized;
                j["residual"] = locus.residual(pair);
            } else {
                j["witness"] = nullptr;
                j["pair"] = nullptr;
                j["normalized_kernel"] = nullptr;
            }
            os << j.dump() << "\n";
            Sink{zl.output, out}.write(os.str());
            return 0;
        }

        if (*rep_cmd) {
            EggDomainSpec spec(rc.n, rc.K);
            BergmanKernel kernel(spec);
            DomainPoint base = parse_point(spec, rc_base);
            DomainPoint point = parse_point(spec, rc_point);
            std::ostringstream os;
            emit_header(os, "rep-coords",
                        {{"n", rc.n}, {"K", rc.K}, {"base", rc_base}, {"point", rc_point}},
                        kDefaultSeed);
            try {
                auto f = representative_coordinates(kernel, base, point);
                json values = json::array();
                for (cplx v : f) values.push_back(complex_json(v));
                os << json{{"value", values}}.dump() << "\n";
                Sink{rc.output, out}.write(os.str());
                return 0;
            } catch (const KernelZeroOnPath& e) {
                os << json{{"error", "KernelZeroOnPath"}, {"message", e.what()}}.dump() << "\n";
                Sink{rc.output, out}.write(os.str());
                return 70;
            } catch (const SingularMetric& e) {
                os << json{{"error", "SingularMetric"}, {"message", e.what()}}.dump() << "\n";
                Sink{rc.output, out}.write(os.str());
                return 70;
            }
        }

        if (*hua_cmd) {
            json input;
            if (hc_input == "-") {
                input = json::parse(std::cin, nullptr, false);
            } else {
                std::ifstream f(hc_input);
                if (!f) throw ValidationError("cannot open input file: " + hc_input);
                input = json::parse(f, nullptr, false);
            }
            if (input.is_discarded()) throw ValidationError("hua-check: input is not valid JSON");

            const json& jbase = input.at("base");
            const CartanKind kind = cartan_kind_from_string(jbase.at("kind").get<std::string>());
            CartanDomainSpec base = [&] {
                switch (kind) {
                    case CartanKind::I:
                        return CartanDomainSpec::type_I(jbase.at("m").get<int>(),
                                                        jbase.at("n").get<int>());
                    case CartanKind::II: return CartanDomainSpec::type_II(jbase.at("p").get<int>());
                    case CartanKind::III:
                        return CartanDomainSpec::type_III(jbase.at("q").get<int>());
                    default: return CartanDomainSpec::type_IV(jbase.at("n").get<int>());
                }
            }();

            std::vector<HuaBlock> blocks;
            for (const json& jb : input.at("blocks"))
                blocks.push_back(HuaBlock{jb.at("N").get<int>(), jb.at("p").get<double>(),
                                          jb.at("K").get<double>()});
            HuaConstructionSpec spec(base, blocks);

            std::vector<std::vector<cplx>> W;
            for (const json& jw : input.at("W")) {
                std::vector<cplx> block;
                for (const json& v : jw) block.push_back(parse_complex(v));
                W.push_back(std::move(block));
            }

            const json& jz = input.at("Z");
            CartanPoint Z = [&] {
                switch (kind) {
                    case CartanKind::I: {
                        Eigen::MatrixXcd M(base.rows, base.cols);
                        if (static_cast<int>(jz.size()) != base.rows)
                            throw ValidationError("hua-check: Z must have m rows");
                        for (int i = 0; i < base.rows; ++i) {
                            if (static_cast<int>(jz[i].size()) != base.cols)
                                throw ValidationError("hua-check: Z rows must have n entries");
                            for (int jcol = 0; jcol < base.cols; ++jcol)
                                M(i, jcol) = parse_complex(jz[i][jcol]);
                        }
                        return CartanPoint::type_I(base.rows, base.cols, std::move(M));
                    }
                    case CartanKind::II: {
                        std::vector<cplx> packed;
                        for (const json& v : jz) packed.push_back(parse_complex(v));
                        return CartanPoint::type_II(base.rows, packed);
                    }
                    case CartanKind::III: {
                        std::vector<cplx> packed;
                        for (const json& v : jz) packed.push_back(parse_complex(v));
                        return CartanPoint::type_III(base.rows, packed);
                    }
                    default: {
                        Eigen::RowVectorXcd v(base.cols);
                        if (static_cast<int>(jz.size()) != base.cols)
                            throw ValidationError("hua-check: Z must have n entries");
                        for (int j2 = 0; j2 < base.cols; ++j2) v(j2) = parse_complex(jz[j2]);
                        return CartanPoint::type_IV(std::move(v));
                    }
                }
            }();

            const bool base_ok = is_member(base, Z);
            const double norm = generic_norm(base, Z);
            const double lhs = base_ok ? hua_lhs(spec, W, Z) : 0.0;
            const bool member = base_ok && hua_member(spec, W, Z);

            std::ostringstream os;
            emit_header(os, "hua-check", {{"input", hc_input}}, kDefaultSeed);
            json j{{"member", member}, {"generic_norm", norm}};
            if (base_ok)
                j["lhs"] = lhs;
            else
                j["lhs"] = nullptr; // generic norm may be <= 0 outside the base domain
            os << j.dump() << "\n";
            Sink{hc_output, out}.write(os.str());
            return 0;
        }

        if (*verify_cmd) {
            if (vf_threads < 1) throw ValidationError("verify: --threads must be >= 1");
            std::ostringstream os;
            emit_header(os, "verify", {{"seed", vf_seed}, {"threads", vf_threads}}, vf_seed);
            auto report = run_acceptance(os, vf_seed, vf_threads);
            os << (report.all_passed() ? "all criteria passed" : "FAILURES present") << "\n";
            Sink{vf_output, out}.write(os.str());
            return report.all_passed() ? 0 : 70;
        }
    } catch (const json::exception& e) {
        err << "data error: " << e.what() << "\n";
        return 65;
    } catch (const ValidationError& e) {
        err << "data error: " << e.what() << "\n";
        return 65;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 70;
    } catch (const std::invalid_argument& e) {
        err << "data error: " << e.what() << "\n";
        return 65;
    }

    err << "usage error: no subcommand\n";
    return 64;
}

} // namespace eggcli
