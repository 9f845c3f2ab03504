// air — command-line front end for the library.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "air/homotopy.hpp"
#include "air/infrared.hpp"
#include "air/io.hpp"
#include "air/lefschetz.hpp"
#include "air/perv.hpp"
#include "air/secondary.hpp"
#include "air/svg.hpp"
#include "air/testing/acceptance.hpp"

using namespace air;
using io::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format = "json";

void emit(const json& j) { std::cout << io::dump(j, format == "pretty") << "\n"; }

Direction direction_arg(const std::string& text, const char* what) {
    try {
        return io::parse_direction(text);
    } catch (const Error& e) {
        throw UsageError(std::string(what) + ": " + e.message());
    }
}

std::size_t label_arg(const PointConfig& c, const std::string& label) { return c.index(label); }

std::vector<std::size_t> labels_arg(const PointConfig& c, const std::string& list) {
    std::vector<std::size_t> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(c.index(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with planar point configurations, secondary polytopes and Stokes data"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "pretty"}));
    std::string config_path, zeta_text, from, to, ray_text, subset_text, w_path, coeffs_text, sub_path, out_path, eta_text;
    bool all = false, oracle = false, faces = false;
    std::vector<int> gens;
    std::vector<std::string> overlays;
    std::uint64_t seed = testing::seed_from_env();
    std::string data_dir = AIR_DATA_DIR;

    auto* tri = app.add_subcommand("triangulations", "Enumerate triangulations (regular ones by default)");
    tri->add_option("--config", config_path, "Point configuration JSON")->required();
    tri->add_flag("--all", all, "Include non-regular triangulations");

    auto* sec = app.add_subcommand("secondary", "Secondary polytope: GKZ vectors and flip edges");
    sec->add_option("--config", config_path)->required();
    sec->add_flag("--faces", faces, "Also list the faces with their subdivisions (at most 6 points)");

    auto* paths = app.add_subcommand("paths", "zeta-convex paths between two points");
    paths->add_option("--config", config_path)->required();
    paths->add_option("--zeta", zeta_text, "Direction dx,dy")->required();
    paths->add_option("--from", from)->required();
    paths->add_option("--to", to)->required();

    auto* stokes = app.add_subcommand("stokes", "Stokes matrix of a matrix diagram");
    stokes->add_option("--config", config_path, "Matrix diagram or GMV JSON")->required();
    stokes->add_option("--zeta", zeta_text)->required();
    stokes->add_flag("--oracle", oracle, "Compare with the ordered-product evaluation");

    auto* wall = app.add_subcommand("wallcross", "Stokes matrices on both sides of a Stokes ray");
    wall->add_option("--config", config_path)->required();
    wall->add_option("--ray", ray_text)->required();

    auto* mutate = app.add_subcommand("mutate", "Apply braid generators (k or -k for the inverse) in order");
    mutate->add_option("--config", config_path)->required();
    mutate->add_option("--gen", gens, "Generators, e.g. --gen 1 --gen -2")->required();

    auto* lef = app.add_subcommand("lefschetz", "Matrix diagram of a one-variable superpotential");
    auto* wopt = lef->add_option("--w", w_path, "JSON coefficient list, ascending degree");
    lef->add_option("--coeffs", coeffs_text, "Comma-separated coefficients, ascending degree")->excludes(wopt);

    auto* trace = app.add_subcommand("trace", "Trace of transports around a convex polygon");
    trace->add_option("--config", config_path)->required();
    trace->add_option("--subset", subset_text, "Comma-separated labels")->required();

    auto* cdga = app.add_subcommand("cdga", "Web CDGA generators and differentials");
    cdga->add_option("--config", config_path)->required();

    auto* ainf = app.add_subcommand("ainf", "A-infinity algebra of infinite polygons");
    ainf->add_option("--config", config_path)->required();
    ainf->add_option("--eta", eta_text, "Direction to infinity dx,dy")->required();

    auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
    verify->add_option("--seed", seed, "Seed (default: AIR_SEED or built-in)");
    verify->add_option("--data", data_dir, "Directory with the sample documents");

    auto* render = app.add_subcommand("render", "SVG picture of a configuration");
    render->add_option("--config", config_path)->required();
    render->add_option("--overlay", overlays, "hull | triangulation | rays | path")
        ->check(CLI::IsMember({"hull", "triangulation", "rays", "path"}));
    render->add_option("--subdivision", sub_path, "Subdivision JSON to draw instead of a generic triangulation");
    render->add_option("--zeta", zeta_text);
    render->add_option("--from", from);
    render->add_option("--to", to);
    render->add_option("--out", out_path, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : 2;
    }

    try {
        if (tri->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            emit(io::triangulations_json(c, enumerate_triangulations(c, !all, seed), !all));
        } else if (sec->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            if (!faces) {
                emit(io::to_json(c, secondary_polytope(c)));
            } else {
                auto fl = secondary_face_lattice(c);
                json j = io::to_json(c, fl.polytope), list = json::array();
                for (std::size_t f = 0; f < fl.lattice.faces.size(); ++f)
                    list.push_back({{"dim", fl.lattice.faces[f].dim},
                                    {"vertices", fl.lattice.faces[f].vertices},
                                    {"subdivision", io::to_json(c, fl.subdivisions[f])}});
                j["faces"] = list;
                emit(j);
            }
        } else if (paths->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            auto zeta = direction_arg(zeta_text, "--zeta");
            require_generic_zeta(c, zeta);
            emit(io::to_json(c, enumerate_convex_paths(c, zeta, label_arg(c, from), label_arg(c, to)), zeta));
        } else if (stokes->parsed()) {
            auto md = io::diagram_from_any(io::read_file(config_path));
            auto zeta = direction_arg(zeta_text, "--zeta");
            auto c = stokes_matrix(md, zeta);
            if (!oracle) {
                emit(io::to_json(md.config(), c));
            } else {
                auto o = stokes_matrix_oracle(md, zeta);
                const bool equal = c == o;
                emit(json{{"stokes", io::to_json(md.config(), c)}, {"oracle", io::to_json(md.config(), o)},
                          {"result", equal ? "EQUAL" : "DIFFER"}});
                return equal ? 0 : 1;
            }
        } else if (wall->parsed()) {
            auto md = io::diagram_from_any(io::read_file(config_path));
            auto wc = wall_cross_report(md, direction_arg(ray_text, "--ray"));
            emit(json{{"before", io::to_json(md.config(), wc.before)},
                      {"after", io::to_json(md.config(), wc.after)},
                      {"connecting", io::to_json(wc.connecting)}});
        } else if (mutate->parsed()) {
            auto md = io::diagram_from_any(io::read_file(config_path));
            for (int g : gens) {
                if (g == 0) throw UsageError("--gen: generators are nonzero integers");
                md = braid_mutate(md, {static_cast<std::size_t>(std::abs(g)), g < 0});
            }
            emit(io::to_json(md));
        } else if (lef->parsed()) {
            json coeffs;
            if (!w_path.empty()) {
                coeffs = io::read_file(w_path);
            } else if (!coeffs_text.empty()) {
                coeffs = json::array();
                std::stringstream ss(coeffs_text);
                std::string item;
                while (std::getline(ss, item, ',')) coeffs.push_back(item);
            } else {
                throw UsageError("lefschetz needs --w or --coeffs");
            }
            auto res = matrix_diagram_from_W(io::superpotential_from_json(coeffs));
            json j = io::to_json(res.diagram);
            j["snap_exact"] = std::all_of(res.snapped_re.begin(), res.snapped_re.end(), [](const Snap& s) { return s.exact; }) &&
                              std::all_of(res.snapped_im.begin(), res.snapped_im.end(), [](const Snap& s) { return s.exact; });
            j["snap_error_bound"] = res.max_snap_error;
            emit(j);
        } else if (trace->parsed()) {
            auto md = io::diagram_from_any(io::read_file(config_path));
            emit(json{{"subset", subset_text}, {"trace", io::to_json(polygon_trace(md, labels_arg(md.config(), subset_text)))}});
        } else if (cdga->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            emit(io::to_json(build_web_cdga(c)));
        } else if (ainf->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            auto alg = build_ainf(c, direction_arg(eta_text, "--eta"));
            json j = io::to_json(alg);
            j["stasheff_ok"] = check_stasheff(alg, alg.k_max).ok;
            emit(j);
        } else if (verify->parsed()) {
            testing::AcceptanceOptions opt;
            opt.seed = seed;
            opt.air_binary = std::filesystem::canonical("/proc/self/exe").string();
            opt.data_dir = data_dir;
            bool ok = true;
            testing::run_acceptance(opt, [&](const testing::CriterionResult& r) {
                std::cout << testing::format_line(r) << std::endl;
                ok = ok && r.passed;
            });
            return ok ? 0 : 1;
        } else if (render->parsed()) {
            auto c = io::config_from_json(io::read_file(config_path));
            Scene scene{c, {}, std::nullopt, {}};
            for (const auto& o : overlays) {
                if (o == "hull") scene.overlays.push_back(HullOverlay{});
                else if (o == "rays") scene.overlays.push_back(StokesRaysOverlay{});
                else if (o == "triangulation")
                    scene.overlays.push_back(sub_path.empty() ? generic_lift_triangulation(c, seed)
                                                              : io::subdivision_from_json(c, io::read_file(sub_path)));
                else {
                    if (zeta_text.empty() || from.empty() || to.empty())
                        throw UsageError("--overlay path needs --zeta, --from and --to");
                    auto zeta = direction_arg(zeta_text, "--zeta");
                    auto ps = enumerate_convex_paths(c, zeta, label_arg(c, from), label_arg(c, to));
                    for (auto& p : ps) scene.overlays.push_back(std::move(p));
                }
            }
            const std::string svg = render_svg(scene);
            if (out_path.empty()) {
                std::cout << svg;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) fail("IoError", "cannot write '" + out_path + "'");
                out << svg;
            }
        }
    } catch (const UsageError& e) {
        std::cerr << io::error_json("UsageError", e.what()).dump() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << io::error_json(e.code(), e.message()).dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << io::error_json("InternalError", e.what()).dump() << "\n";
        return 1;
    }
    return 0;
}
