#include "divalg/problem.hpp"
#include "divalg/progression.hpp"
#include "divalg/xiconvex.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace divalg;

constexpr const char* kVersion = "divalg 0.1.0";

Vec ambient_point(const AffineSemigroup& s, const Vec& x) { return s.embedding.mul_vec(x); }

Json ambient_list(const AffineSemigroup& s, const std::vector<Vec>& xs) {
    Json a = Json::array();
    for (const Vec& x : xs) a.push_back(vec_json(ambient_point(s, x)));
    return a;
}

Json semigroup_summary(const AffineSemigroup& s) {
    Json j;
    j["rank"] = s.rank;
    j["support_forms"] = s.support_forms().size();
    j["hilbert_basis_size"] = s.hilbert.size();
    j["positive"] = true;  // construction rejects non-positive input
    return j;
}

struct Options {
    std::string format = "table";
    std::size_t cap_faces = 20;
    std::size_t hs_window = 0;
    long long box = 10;
    std::size_t jmax = 12;
    long long k = 0;
    std::size_t mu_cap = 4;
    std::vector<long long> class_override;
    std::vector<std::size_t> face_override;
};

Vec to_vec(const std::vector<long long>& v) {
    Vec out;
    for (long long x : v) out.push_back(Int(x));
    return out;
}

const std::vector<Vec>& form_system(const ProblemFile& p) {
    return p.xi.empty() ? p.semigroup.support_forms() : p.xi;
}

Vec require_bounds(const ProblemFile& p, const DivisorClassGroup& cl) {
    if (p.bounds) return *p.bounds;
    if (p.class_coords) return cl.bounds_of_class(*p.class_coords);
    throw InputError("command needs 'bounds' or a class");
}

Json run_command(const ProblemFile& p, const std::string& command, const Options& opt) {
    const AffineSemigroup& s = p.semigroup;
    Json out;
    if (command == "info") {
        out = semigroup_summary(s);
        out["hilbert_basis"] = ambient_list(s, s.hilbert);
        out["support_forms_list"] = vec_list_json(s.support_forms());
        out["extreme_rays"] = ambient_list(s, s.cone.rays);
        return out;
    }
    if (command == "hilbert-basis") {
        out["hilbert_basis"] = ambient_list(s, s.hilbert);
        return out;
    }
    if (command == "simplicial") {
        auto rep = simplicial_check(s);
        out["simplicial"] = rep.simplicial;
        out["extreme_ray_count"] = rep.ray_count;
        return out;
    }
    if (command == "depth-bounds") {
        auto rep = depth_bounds(s);
        out["grade_mP"] = rep.grade_mP;
        out["lambda"] = rep.lambda;
        out["grade_witness_facets"] = rep.grade_witness;
        out["lambda_witness"] = ambient_list(s, rep.lambda_witness);
        return out;
    }
    if (command == "pure-check" || command == "divisorial-check") {
        if (p.xi.empty()) throw InputError("command needs a form system 'xi'");
        auto rep = command == "pure-check" ? purity_check(s, p.xi)
                                           : divisoriality_check(s, p.xi);
        out["ok"] = rep.ok;
        if (!rep.ok) out["reason"] = rep.reason;
        return out;
    }
    if (command == "eff") {
        if (!p.bounds) throw InputError("command needs 'bounds'");
        out["eff"] = vec_json(eff_bounds(s, form_system(p), *p.bounds));
        return out;
    }
    if (command == "iso") {
        if (!p.bounds || !p.bounds_b)
            throw InputError("command needs 'bounds' and 'bounds_b'");
        auto w = xi_iso_witness(s, form_system(p), *p.bounds, *p.bounds_b);
        out["isomorphic"] = w.has_value();
        if (w) out["witness"] = vec_json(ambient_point(s, *w));
        return out;
    }
    if (command == "intersect") {
        if (!p.bounds || !p.bounds_b)
            throw InputError("command needs 'bounds' and 'bounds_b'");
        if (p.zeta.empty()) throw InputError("command needs a second system 'zeta'");
        auto rep = intersect_modules(s.rank, form_system(p), *p.bounds, p.zeta, *p.bounds_b);
        out["empty"] = rep.empty;
        out["generators"] = vec_list_json(rep.generators);
        out["mu"] = rep.generators.size();
        return out;
    }

    DivisorClassGroup cl = divisor_class_group(s);
    Json group;
    group["invariant_factors"] = vec_json(cl.pres.invariant_factors);
    group["free_rank"] = cl.pres.free_rank;
    if (command == "class-group") {
        out["class_group"] = group;
        out["canonical_class"] = vec_json(canonical_class(s, cl));
        return out;
    }
    if (command == "mingen" || command == "mu") {
        if (p.bounds && !p.xi.empty()) {
            auto gens = module_minimal_generators(s, p.xi, *p.bounds);
            out["mu"] = gens.size();
            if (command == "mingen") out["generators"] = ambient_list(s, gens);
            return out;
        }
        Vec a = require_bounds(p, cl);
        auto gens = minimal_generators(s, a);
        out["bounds"] = vec_json(a);
        out["class"] = vec_json(cl.class_of_bounds(a));
        out["mu"] = gens.size();
        if (command == "mingen") out["generators"] = ambient_list(s, gens);
        return out;
    }
    if (command == "conic") {
        auto rep = conic_classes(s, cl);
        Json classes = Json::array();
        for (std::size_t i = 0; i < rep.classes.size(); ++i) {
            Json c;
            c["class"] = vec_json(rep.classes[i]);
            c["bounds"] = vec_json(rep.witnesses[i].bounds);
            c["beta"] = qvec_json(rep.witnesses[i].beta);
            classes.push_back(std::move(c));
        }
        out["classes"] = classes;
        out["complete"] = rep.complete;
        return out;
    }
    if (command == "face-ideal") {
        std::vector<std::size_t> face = opt.face_override.empty() ? p.face : opt.face_override;
        auto rep = face_ideal_bounds(s, face);
        out["tight_facets"] = rep.tight;
        out["q_bounds"] = vec_json(rep.q_bounds);
        out["q_class"] = vec_json(cl.class_of_bounds(rep.q_bounds));
        out["q_witness"] = qvec_json(rep.q_witness);
        out["r_bounds"] = vec_json(rep.r_bounds);
        out["r_class"] = vec_json(cl.class_of_bounds(rep.r_bounds));
        out["r_witness"] = qvec_json(rep.r_witness);
        return out;
    }
    if (command == "frobenius") {
        if (opt.k > 0) {
            auto rep = frobenius_decomposition(s, cl, Int(opt.k));
            Json classes = Json::array();
            for (const auto& [c, n] : rep.class_multiplicity) {
                Json e;
                e["class"] = vec_json(c);
                e["multiplicity"] = int_json(n);
                classes.push_back(std::move(e));
            }
            out["k"] = opt.k;
            out["classes"] = classes;
        } else {
            auto lad = frobenius_ladder(s, cl);
            out["stabilized"] = lad.stabilized;
            out["stable_k"] = int_json(lad.stable_k);
            out["classes"] = vec_list_json(lad.classes);
        }
        return out;
    }
    if (command == "cm") {
        Vec a = require_bounds(p, cl);
        auto rep = cohen_macaulay_test(s, a);
        out["bounds"] = vec_json(a);
        out["class"] = vec_json(cl.class_of_bounds(a));
        out["cohen_macaulay"] = rep.cm;
        out["e_module"] = int_json(rep.e_module);
        out["e_ring"] = int_json(rep.e_ring);
        out["mu"] = rep.mu;
        if (opt.hs_window > 0) {
            auto hs = hilbert_samuel(s, a, opt.hs_window);
            Json chi = Json::array();
            for (const Int& v : hs.chi) chi.push_back(int_json(v));
            out["hilbert_samuel_chi"] = chi;
            out["hilbert_samuel_multiplicity"] = int_json(hs.multiplicity);
        }
        return out;
    }
    if (command == "progression") {
        if (!p.class_coords) throw InputError("command needs a direction class");
        Vec d = p.offset_coords ? *p.offset_coords : Vec(cl.pres.coord_count(), Int(0));
        auto rep = progression_analysis(s, cl, *p.class_coords, d, opt.jmax);
        out["direction"] = vec_json(rep.c);
        out["offset"] = vec_json(rep.d);
        out["mu_table"] = rep.mu;
        out["degree"] = rep.degree;
        out["period"] = int_json(rep.period);
        Json limits = Json::array();
        for (const Int& l : rep.limits) limits.push_back(int_json(l));
        out["limits"] = limits;
        out["inf_depth"] = rep.inf_depth;
        return out;
    }
    if (command == "enumerate") {
        auto rep = enumerate_small_mu(s, form_system(p), cl.pres, opt.mu_cap, Int(opt.box));
        out["classes"] = vec_list_json(rep.classes);
        out["mu"] = rep.mu;
        out["shell_min_mu"] = rep.shell_min_mu;
        out["finiteness"] = rep.experimentally_finite ? "experimentally finite"
                                                      : "inconclusive at this box";
        return out;
    }
    throw InputError("unknown command: " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Divisorial invariants of normal affine semigroup rings"};
    std::string command, path;
    Options opt;
    app.add_option("command", command, "operation to run")->required();
    app.add_option("problem", path, "problem document (JSON)")->required();
    app.add_option("--format", opt.format, "table|machine");
    app.add_option("--cap-faces", opt.cap_faces, "face lattice size cap");
    app.add_option("--hs-window", opt.hs_window, "Hilbert-Samuel window");
    app.add_option("--box", opt.box, "search radius in free class coordinates");
    app.add_option("--jmax", opt.jmax, "progression table length");
    app.add_option("--k", opt.k, "Frobenius exponent (0 = ladder)");
    app.add_option("--mu-cap", opt.mu_cap, "generator-count cap for enumerate");
    app.add_option("--class", opt.class_override, "class coordinates");
    app.add_option("--face", opt.face_override, "facet indices for face-ideal");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(path);
        if (!in) throw divalg::InputError("cannot open problem file: " + path);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
        divalg::ProblemFile problem = divalg::parse_problem(text);
        if (!opt.class_override.empty()) problem.class_coords = to_vec(opt.class_override);
        if (problem.options.contains("jmax"))
            opt.jmax = problem.options["jmax"].get<std::size_t>();
        if (problem.options.contains("box"))
            opt.box = problem.options["box"].get<long long>();
        if (problem.options.contains("mu_cap"))
            opt.mu_cap = problem.options["mu_cap"].get<std::size_t>();

        divalg::Json report;
        report["command"] = command;
        report["semigroup"] = semigroup_summary(problem.semigroup);
        report["result"] = run_command(problem, command, opt);
        divalg::Json prov;
        prov["tool"] = kVersion;
        prov["format"] = opt.format;
        prov["seed"] = "none";
        report["provenance"] = prov;
        std::cout << divalg::render_report(report, opt.format);
        return 0;
    } catch (const divalg::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const divalg::HypothesisError& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return 3;
    } catch (const divalg::ResourceError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
