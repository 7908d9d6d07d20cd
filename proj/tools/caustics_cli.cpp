// Command-line front end: compute, beta, roll, cusps, render, verify, serve.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caustics/caustics.hpp"
#include "caustics/service.hpp"

namespace
{

using caustics::Json;

struct Options
{
    std::string scene_path;
    std::string out_path;
    std::optional<std::size_t> grid;
    std::string format; // empty: the subcommand's default
    int port = 8080;
};

std::string read_text(std::string const& path)
{
    if (path == "-")
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw caustics::SceneError("cannot read scene file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(std::string const& path, std::string const& text)
{
    if (path.empty() || path == "-")
    {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw caustics::Error("cannot write '" + path + "'");
    out << text;
}

Json load_document(Options const& opt, std::optional<std::vector<std::string>> const& outputs)
{
    Json doc;
    try
    {
        doc = Json::parse(read_text(opt.scene_path));
    }
    catch (Json::parse_error const& e)
    {
        throw caustics::SceneError(std::string("scene document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw caustics::SceneError("scene must be an object");
    if (opt.grid)
        doc["grid"]["n"] = *opt.grid;
    if (outputs)
        doc["outputs"] = *outputs;
    return doc;
}

void emit_geometry(Options const& opt, std::optional<std::vector<std::string>> const& outputs)
{
    caustics::Scene const scene = caustics::load_scene(load_document(opt, outputs));
    Json const payload = caustics::compute_payload(scene);
    if (opt.format == "svg")
        write_text(opt.out_path, caustics::render_svg(payload));
    else
        write_text(opt.out_path, payload.dump(2) + "\n");
}

int run_verify(Options const& opt)
{
    caustics::VerifyReport const report = caustics::run_verify();
    if (opt.format == "data")
    {
        write_text(opt.out_path, caustics::report_json(report).dump(2) + "\n");
    }
    else
    {
        std::ostringstream os;
        for (auto const& c : report.criteria)
        {
            os << (c.passed() ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.title << "\n";
            for (auto const& k : c.checks)
            {
                char line[256];
                std::snprintf(line, sizeof line, "         %-4s %s: measured %.3e, tol %.1e\n",
                              k.passed ? "ok" : "BAD", k.name.c_str(), k.measured, k.tolerance);
                os << line;
            }
        }
        write_text(opt.out_path, os.str());
    }
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Caustics of plane mirrors: envelopes, rolling circles and cusps"};
    app.require_subcommand(1);
    Options opt;

    auto add_scene_flags = [&](CLI::App* sub) {
        sub->add_option("--scene", opt.scene_path, "Scene document (JSON), '-' for stdin")->required();
        sub->add_option("--out", opt.out_path, "Output file (default stdout)");
        sub->add_option("--grid", opt.grid, "Override the number of grid samples")->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "Output format: svg or data (JSON)")
            ->check(CLI::IsMember({"svg", "data"}));
    };

    auto* compute = app.add_subcommand("compute", "Every layer requested by the scene");
    add_scene_flags(compute);
    auto* beta = app.add_subcommand("beta", "The curve and its second envelope");
    add_scene_flags(beta);
    auto* roll = app.add_subcommand("roll", "Rolling focal circles and their trace points");
    add_scene_flags(roll);
    auto* cusps = app.add_subcommand("cusps", "Caustics with their cusps and asymptotes");
    add_scene_flags(cusps);
    auto* render = app.add_subcommand("render", "SVG picture of the scene");
    add_scene_flags(render);

    auto* verify = app.add_subcommand("verify", "Run the acceptance checks");
    verify->add_option("--out", opt.out_path, "Report file (default stdout)");
    verify->add_option("--format", opt.format, "Report format: text (default) or data for JSON")
        ->check(CLI::IsMember({"text", "data"}));

    auto* serve = app.add_subcommand("serve", "Run the HTTP compute service");
    serve->add_option("--port", opt.port, "Port to listen on")->check(CLI::Range(1, 65535))->default_val(8080);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (compute->parsed())
            emit_geometry(opt, std::nullopt);
        else if (beta->parsed())
            emit_geometry(opt, std::vector<std::string>{"alpha", "beta"});
        else if (roll->parsed())
            emit_geometry(opt, std::vector<std::string>{"alpha", "beta", "rolling_frames"});
        else if (cusps->parsed())
            emit_geometry(opt, std::vector<std::string>{"alpha", "caustic", "cusps", "asymptotes"});
        else if (render->parsed())
        {
            if (opt.format.empty())
                opt.format = "svg";
            emit_geometry(opt, std::nullopt);
        }
        else if (verify->parsed())
            return run_verify(opt);
        else if (serve->parsed())
        {
            std::cerr << "listening on http://127.0.0.1:" << opt.port << "\n";
            caustics::serve(opt.port);
        }
    }
    catch (caustics::Error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
