// pcalc: command-line front end for the p-adic operator calculus library.
// Emits canonical JSON on stdout; reads distribution inputs from stdin.
//
// Exit codes: 0 success, 2 domain/hypothesis errors, 3 precision errors,
// 64 usage errors.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "padic/filtmod.hpp"
#include "padic/json_io.hpp"
#include "padic/refine.hpp"

using namespace padic;

namespace {

int default_prec() {
    if (const char* env = std::getenv("PCALC_PREC")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    return kDefaultPrec;
}

Json read_stdin_json() {
    Json j;
    std::cin >> j;
    return j;
}

struct Common {
    long p = 3;
    int prec = default_prec();
    int jobs = 1; // reserved; the library is sequential and deterministic
};

CharacterPair parse_pair(const Common& c, const std::string& alpha, const std::string& beta,
                         int k) {
    ContinuousCharacter a = parse_character(c.p, alpha, c.prec);
    ContinuousCharacter b = parse_character(c.p, beta, c.prec);
    if (a.alg_exp() != 0 || b.alg_exp() != 0)
        throw DomainError("pair characters must be smooth (no x^n part)");
    return CharacterPair(a.smooth(), b.smooth(), k);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic (phi, psi, Gamma) operator calculus"};
    app.require_subcommand(1);
    Common c;
    app.add_option("--p", c.p, "odd prime p")->check(CLI::PositiveNumber);
    app.add_option("--prec", c.prec, "working precision (powers of p)");
    app.add_option("--jobs", c.jobs, "worker count (reserved; output-invariant)")
        ->check(CLI::PositiveNumber);

    // gauss-sum
    auto* gs = app.add_subcommand("gauss-sum", "Gauss sum G(tau, eps^(m)) and its square");
    std::string gs_char = "quadratic";
    gs->add_option("--char,--tau", gs_char, "smooth character spec");
    int gs_conductor = -1;
    gs->add_option("--conductor", gs_conductor, "expected conductor (validated)");

    // intertwine
    auto* iw = app.add_subcommand("intertwine", "smooth intertwining factor on 1_{p^n Z} e^{2 pi i x y}");
    std::string iw_alpha, iw_beta, iw_y = "1/9";
    int iw_k = 3, iw_n = 0;
    bool iw_oracle = false;
    iw->add_option("--alpha", iw_alpha, "alpha spec")->required();
    iw->add_option("--beta", iw_beta, "beta spec")->required();
    iw->add_option("--k", iw_k, "weight k >= 2");
    iw->add_option("--n", iw_n, "ball exponent n");
    iw->add_option("--y", iw_y, "additive twist y (rational)");
    iw->add_flag("--oracle-check", iw_oracle, "also run the shell-sum evaluation");

    // amice (distribution on stdin)
    auto* am = app.add_subcommand("amice", "Amice transform of a distribution (stdin JSON)");
    long am_order = 8;
    am->add_option("--order", am_order, "truncation order N");

    // psi
    auto* ps = app.add_subcommand("psi", "psi operator on a polynomial");
    std::string ps_series = "T";
    ps->add_option("--series", ps_series, "polynomial in T");

    // residue
    auto* rs = app.add_subcommand("residue", "res_0, optionally against poles");
    std::string rs_series = "T^-1";
    std::string rs_poles;
    rs->add_option("--series", rs_series, "Laurent polynomial in T");
    rs->add_option("--poles", rs_poles, "poles a:k,... (|a| < 1)");

    // classify
    auto* cl = app.add_subcommand("classify", "trianguline parameter class");
    std::string cl_u = "1", cl_w = "2", cl_hbar = "inf";
    cl->add_option("--u", cl_u, "u(s) = val(delta_1(p))");
    cl->add_option("--w", cl_w, "w(s) = w(delta_1) - w(delta_2)");
    cl->add_option("--hbar", cl_hbar, "inf or fin");

    // check-admissible
    auto* ca = app.add_subcommand("check-admissible", "weak admissibility of D(alpha,beta)");
    std::string ca_alpha, ca_beta;
    int ca_k = 3, ca_level = -1;
    ca->add_option("--alpha", ca_alpha)->required();
    ca->add_option("--beta", ca_beta)->required();
    ca->add_option("--k", ca_k);
    ca->add_option("--level", ca_level, "filtration coefficient level n");

    // dual
    auto* du = app.add_subcommand("dual", "dual-with-twist isomorphism report");
    std::string du_alpha, du_beta;
    int du_k = 3, du_level = -1;
    du->add_option("--alpha", du_alpha)->required();
    du->add_option("--beta", du_beta)->required();
    du->add_option("--k", du_k);
    du->add_option("--level", du_level);

    // refinements
    auto* rf = app.add_subcommand("refinements", "refinement triples and sigma data");
    std::string rf_alpha, rf_beta;
    int rf_k = 3;
    rf->add_option("--alpha", rf_alpha)->required();
    rf->add_option("--beta", rf_beta)->required();
    rf->add_option("--k", rf_k);

    // verify-emerton
    auto* ve = app.add_subcommand("verify-emerton", "dim Ref vs Jacquet-exponent dimension");
    std::string ve_alpha, ve_beta, ve_eta, ve_psi;
    int ve_k = 3;
    ve->add_option("--alpha", ve_alpha)->required();
    ve->add_option("--beta", ve_beta)->required();
    ve->add_option("--k", ve_k);
    ve->add_option("--eta", ve_eta)->required();
    ve->add_option("--psi", ve_psi)->required();

    // fil-check
    auto* fc = app.add_subcommand("fil-check", "filtration condition at level m (stdin JSON)");
    std::string fc_alpha, fc_beta;
    int fc_k = 3, fc_m = 1;
    fc->add_option("--alpha", fc_alpha)->required();
    fc->add_option("--beta", fc_beta)->required();
    fc->add_option("--k", fc_k);
    fc->add_option("--m", fc_m, "level of the roots of unity");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (gs->parsed()) {
            ContinuousCharacter tau = parse_character(c.p, gs_char, c.prec);
            if (tau.alg_exp() != 0) throw DomainError("gauss-sum: character must be smooth");
            if (gs_conductor >= 0 && tau.smooth().conductor() != gs_conductor)
                throw DomainError("gauss-sum: conductor mismatch");
            CycloElement G = gauss_sum_std(tau.smooth(), c.prec);
            Json out;
            out["p"] = c.p;
            out["conductor"] = tau.smooth().conductor();
            out["G"] = to_json(G);
            out["G_squared"] = to_json(G * G);
            emit(out);
        } else if (iw->parsed()) {
            CharacterPair pr = parse_pair(c, iw_alpha, iw_beta, iw_k);
            ElementaryFunction h{c.p, 0, iw_n, 0, rat_from_str(iw_y)};
            auto closed = intertwine_closed(h, pr, c.prec);
            Json out;
            out["factor"] = to_json(closed.factor);
            out["image"] = to_json(closed.image);
            out["C"] = to_json(intertwining_constant(pr));
            out["m"] = essential_conductor(pr);
            if (iw_oracle) {
                auto oracle = intertwine_oracle(h, pr, c.prec);
                out["oracle"] = to_json(oracle.factor);
                out["agree"] = indistinguishable(
                    oracle.factor, closed.factor.embed_to(oracle.factor.level()));
            }
            emit(out);
        } else if (am->parsed()) {
            LocalDistribution mu = dist_from_json(read_stdin_json());
            Json out;
            out["series"] = to_json(amice(mu, am_order));
            emit(out);
        } else if (ps->parsed()) {
            TruncatedSeries f = parse_series(c.p, ps_series, c.prec);
            TruncatedSeries r = psi(f);
            Json out;
            out["p"] = c.p;
            Json cs = Json::object();
            for (const auto& [n, v] : r.coeffs()) cs[std::to_string(n)] = v.balanced_unit().get_str() +
                (v.pi_exponent() != 0 ? "*p^" + std::to_string(v.pi_exponent()) : "");
            out["coeffs"] = cs;
            out["series"] = to_json(r);
            emit(out);
        } else if (rs->parsed()) {
            TruncatedSeries f = parse_series(c.p, rs_series, c.prec);
            Json out;
            if (rs_poles.empty()) {
                out["res0"] = to_json(residue_at_zero(f));
            } else {
                std::vector<Pole> poles;
                size_t pos = 0;
                while (pos < rs_poles.size()) {
                    size_t comma = rs_poles.find(',', pos);
                    std::string item = rs_poles.substr(
                        pos, comma == std::string::npos ? std::string::npos : comma - pos);
                    size_t colon = item.find(':');
                    if (colon == std::string::npos)
                        throw DomainError("residue: poles must be a:k pairs");
                    poles.push_back(Pole{PadicScalar::from_rational(
                                             c.p, rat_from_str(item.substr(0, colon)), c.prec),
                                         std::stol(item.substr(colon + 1))});
                    if (comma == std::string::npos) break;
                    pos = comma + 1;
                }
                out["residue"] = to_json(partial_fraction_residue(f, poles));
            }
            emit(out);
        } else if (cl->parsed()) {
            if (cl_hbar != "inf" && cl_hbar != "fin")
                throw DomainError("classify: --hbar must be inf or fin");
            TriangulationParams s(rat_from_str(cl_u), rat_from_str(cl_w), cl_hbar == "inf");
            auto r = classify_triangulation(s);
            Json out;
            out["class"] = tri_class_name(r.cls);
            out["u"] = rat_str(r.u);
            out["w"] = rat_str(r.w);
            emit(out);
        } else if (ca->parsed()) {
            CharacterPair pr = parse_pair(c, ca_alpha, ca_beta, ca_k);
            int n = ca_level >= 0 ? ca_level
                                  : std::max(pr.alpha().conductor(), pr.beta().conductor());
            auto D = build_D(pr, n, c.prec);
            auto rep = weakly_admissible_irreducible(D);
            Json out;
            out["module"] = to_json(D);
            out["admissible"] = rep.admissible;
            out["irreducible"] = rep.irreducible;
            out["t_newton"] = rat_str(rep.t_newton);
            out["t_hodge"] = rat_str(rep.t_hodge);
            out["witnesses"] = rep.witnesses;
            emit(out);
        } else if (du->parsed()) {
            CharacterPair pr = parse_pair(c, du_alpha, du_beta, du_k);
            int n = du_level >= 0 ? du_level
                                  : std::max(pr.alpha().conductor(), pr.beta().conductor());
            auto rep = dual_twist(pr, n, c.prec);
            Json out;
            out["mismatches"] = rep.mismatches;
            out["dual_twisted"] = to_json(rep.dual_twisted);
            out["target"] = to_json(rep.target);
            out["dual_line"] = Json{{"e_alpha_coef", to_json(rep.dual_line_coef_e_alpha)},
                                    {"e_beta_coef", to_json(rep.dual_line_coef_e_beta)}};
            emit(out);
        } else if (rf->parsed()) {
            CharacterPair pr = parse_pair(c, rf_alpha, rf_beta, rf_k);
            auto refs = refinements_of(pr);
            Json out;
            Json arr = Json::array();
            for (const auto& R : refs) {
                Json jr;
                jr["eta"] = to_json(R.eta);
                jr["c"] = to_json(R.c);
                jr["tag"] = R.tag == Refinement::Tag::EAlpha ? "e_alpha" : "e_beta";
                auto s = sigma(R, pr);
                jr["sigma"] = Json{{"first", to_json(s.first)}, {"second", to_json(s.second)}};
                arr.push_back(jr);
            }
            out["refinements"] = arr;
            emit(out);
        } else if (ve->parsed()) {
            CharacterPair pr = parse_pair(c, ve_alpha, ve_beta, ve_k);
            auto r = verify_emerton(pr, parse_character(c.p, ve_eta, c.prec),
                                    parse_character(c.p, ve_psi, c.prec));
            Json out;
            out["lhs"] = r.lhs;
            out["rhs"] = r.rhs;
            out["equal"] = r.equal;
            emit(out);
        } else if (fc->parsed()) {
            CharacterPair pr = parse_pair(c, fc_alpha, fc_beta, fc_k);
            Json in = read_stdin_json();
            LocalDistribution ma = dist_from_json(in.at("mu_alpha"));
            LocalDistribution mb = dist_from_json(in.at("mu_beta"));
            auto r = fil_condition_check(ma, mb, pr, fc_m, c.prec);
            Json out;
            out["ok"] = r.ok;
            Json ws = Json::array();
            for (const auto& w : r.witnesses)
                ws.push_back(Json{{"j", w.j}, {"a", w.a.get_str()}});
            out["witnesses"] = ws;
            emit(out);
        }
    } catch (const PrecisionError& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
