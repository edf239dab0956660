#include "curvlab/curvature.hpp"
#include "curvlab/dsl.hpp"
#include "curvlab/points.hpp"
#include "curvlab/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace curvlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const ScenarioReport& r, bool json)
{
    std::cout << (json ? to_json(r) : to_text(r));
    return r.pass ? 0 : kExitFail;
}

int cmd_expand(const std::string& dsl, int order, const std::string& center_text)
{
    if (order < 0 || order > kMaxOrder)
        throw ConfigError("order must lie in [0, " + std::to_string(kMaxOrder) + "]");
    const KernelSpec k = parse_kernel_dsl(dsl);
    const Point center = center_text.empty() ? Point(k.domain().m, Complex(0.0, 0.0)) : parse_point(center_text);
    const HermitianSeries s = taylor_expand(k, center, order);
    const Series& raw = s.series();
    std::cout << "# kernel " << pretty_print(k) << "\n# order " << order << "\n# I J re im\n";
    std::cout.precision(17);
    for (std::size_t i = 0; i < raw.dim(); ++i) {
        for (std::size_t j = 0; j < raw.dim(); ++j) {
            const Complex c = raw.at(i, j);
            if (c == Complex(0.0, 0.0))
                continue;
            std::cout << raw.basis()[i].to_string() << " " << raw.basis()[j].to_string() << " " << c.real()
                      << " " << c.imag() << "\n";
        }
    }
    return 0;
}

int cmd_curvature(const std::string& dsl, const std::string& at)
{
    const KernelSpec k = parse_kernel_dsl(dsl);
    const Point w = parse_point(at);
    if (w.size() != k.domain().m)
        throw ConfigError("point has " + std::to_string(w.size()) + " coordinates, kernel needs " +
                          std::to_string(k.domain().m));
    const CurvatureMatrix c = curvature_matrix(k, w);
    std::cout.precision(15);
    std::cout << "# curvature of " << pretty_print(k) << " at (" << at << ")\n";
    for (Eigen::Index i = 0; i < c.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < c.entries.cols(); ++j)
            std::cout << (j ? " " : "") << format_complex(c.entries(i, j));
        std::cout << "\n";
    }
    const PosDefVerdict v = curvature_negativity(k, w);
    std::cout << "# negativity: " << v.describe() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"curvlab: curvature, positivity and divisibility checks for reproducing kernels"};
    app.require_subcommand(1);

    std::string config_path;
    bool json = false;
    auto* check = app.add_subcommand("check", "run the checks listed in a config file");
    check->add_option("--config", config_path, "config file (key = value lines)")->required();
    check->add_flag("--json", json, "JSON report (overrides the config format)");

    std::string scenario_id;
    std::uint64_t seed = default_seed();
    auto* scenario = app.add_subcommand("scenario", "run a named scenario");
    scenario->add_option("id", scenario_id, "scenario id")->required();
    scenario->add_flag("--json", json, "JSON report");
    scenario->add_option("--seed", seed, "random seed");

    std::string dsl;
    int order = kDefaultOrder;
    std::string center;
    auto* expand = app.add_subcommand("expand", "dump Taylor coefficients of a kernel");
    expand->add_option("--kernel", dsl, "kernel expression")->required();
    expand->add_option("--order", order, "truncation order");
    expand->add_option("--center", center, "expansion center, e.g. 0.2+0.1i");

    std::string at;
    auto* curv = app.add_subcommand("curvature", "curvature matrix of a kernel at a point");
    curv->add_option("--kernel", dsl, "kernel expression")->required();
    curv->add_option("--at", at, "point, e.g. 0.2+0.1i")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalid;
    }

    try {
        if (*check) {
            const RunConfig cfg = parse_config(read_file(config_path));
            return emit(run_checks(cfg), json || cfg.format == OutputFormat::json);
        }
        if (*scenario) {
            if (std::find(scenario_ids().begin(), scenario_ids().end(), scenario_id) == scenario_ids().end()) {
                std::cerr << "error: unknown scenario '" << scenario_id << "'; known:";
                for (const auto& id : scenario_ids())
                    std::cerr << " " << id;
                std::cerr << "\n";
                return kExitInvalid;
            }
            return emit(run_scenario(scenario_id, seed), json);
        }
        if (*expand)
            return cmd_expand(dsl, order, center);
        if (*curv)
            return cmd_curvature(dsl, at);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
