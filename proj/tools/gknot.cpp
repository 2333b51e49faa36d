#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gknot/errors.hpp"
#include "gknot/invariants.hpp"
#include "gknot/oracle.hpp"
#include "gknot/rhd.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gknot::UnknownComponent("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_kit(const gknot::GraphKit& kit) {
    for (const auto& [label, e] : kit.elements)
        std::cout << "kit " << label << " " << gknot::serialize(e) << "\n";
    for (const auto& [label, kids] : kit.gamma) {
        std::cout << "gamma " << label << ":";
        for (const auto& k : kids) std::cout << " " << k;
        std::cout << "\n";
    }
}

int run(int argc, char** argv) {
    CLI::App app{"graph knot and round handle decomposition calculator"};
    app.require_subcommand(1);

    std::string expr_text, out_path, rhd_path, knot_id, id1, id2;

    auto* c_norm = app.add_subcommand("normalize", "canonical form of an expression");
    c_norm->add_option("-e,--expr", expr_text, "knot expression")->required();

    auto* c_inv = app.add_subcommand("invariants", "Alexander polynomial and genus");
    c_inv->add_option("-e,--expr", expr_text, "knot expression")->required();

    auto* c_level = app.add_subcommand("level", "cable-sum hierarchy level");
    c_level->add_option("-e,--expr", expr_text, "knot expression")->required();

    auto* c_kit = app.add_subcommand("kit", "graph kit of an expression");
    c_kit->add_option("-e,--expr", expr_text, "knot expression")->required();

    auto* c_build = app.add_subcommand("build", "build a decomposition realizing an expression");
    c_build->add_option("-e,--expr", expr_text, "knot expression")->required();
    c_build->add_option("-o,--output", out_path, "output file")->required();

    auto* c_val = app.add_subcommand("validate", "replay and check a decomposition");
    c_val->add_option("file", rhd_path, "decomposition file")->required();

    auto* c_ext = app.add_subcommand("extract", "knot expressions and kit of a decomposition");
    c_ext->add_option("file", rhd_path, "decomposition file")->required();
    c_ext->add_option("-k,--knot", knot_id, "critical knot id")->required();

    auto* c_cls = app.add_subcommand("classify", "link type of two critical unknots");
    c_cls->add_option("file", rhd_path, "decomposition file")->required();
    c_cls->add_option("id1", id1, "first critical knot")->required();
    c_cls->add_option("id2", id2, "second critical knot")->required();

    gknot::EnumerationBudget budget;
    bool valid_only = false, count_only = false;
    auto* c_enum = app.add_subcommand("enumerate", "stream decompositions within a budget");
    c_enum->add_option("--max-saddles", budget.max_saddles, "saddle bound (default 2)");
    c_enum->add_option("--coeff-bound", budget.coeff_bound, "coefficient bound (default 3)");
    c_enum->add_option("--max-depth", budget.max_depth, "total event bound (default 4)");
    c_enum->add_option("--seed", budget.seed, "seed (reserved; order is deterministic)");
    c_enum->add_flag("--valid-only", valid_only, "only decompositions passing validate");
    c_enum->add_flag("--count", count_only, "print counts instead of the stream");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    if (*c_norm) {
        std::cout << gknot::serialize(gknot::normalize(gknot::parse_expr(expr_text))) << "\n";
    } else if (*c_inv) {
        gknot::KnotExpr e = gknot::parse_expr(expr_text);
        std::cout << "alexander: " << gknot::alexander(e).to_string() << "\n";
        std::cout << "genus: " << gknot::genus(e) << "\n";
    } else if (*c_level) {
        std::cout << gknot::level(gknot::parse_expr(expr_text)) << "\n";
    } else if (*c_kit) {
        print_kit(gknot::kit_of(gknot::parse_expr(expr_text)));
    } else if (*c_build) {
        gknot::BuiltRHD built = gknot::build_expr(gknot::parse_expr(expr_text));
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw gknot::UnknownComponent("cannot write " + out_path);
        out << gknot::serialize_rhd(built.rhd);
        std::cout << "root " << built.root << "\n";
    } else if (*c_val) {
        auto violations = gknot::validate(gknot::parse_rhd(read_file(rhd_path)));
        if (violations.empty()) {
            std::cout << "ok\n";
        } else {
            for (const auto& v : violations) std::cout << gknot::to_string(v.kind) << "\n";
            return 1;
        }
    } else if (*c_ext) {
        gknot::RHD r = gknot::parse_rhd(read_file(rhd_path));
        gknot::ExtractionResult res = gknot::extract(r, knot_id);
        std::cout << "knot " << knot_id << " " << gknot::serialize(res.knot_exprs.at(knot_id)) << "\n";
        print_kit(res.kit);
        for (const auto& [label, comp] : res.witness_r)
            std::cout << "witnessR " << label << " " << comp << "\n";
        for (const auto& [label, comp] : res.witness_gamma)
            std::cout << "witnessGamma " << label << " " << comp << "\n";
        if (!res.witness_gamma_target.empty())
            std::cout << "witnessGammaTarget " << res.witness_gamma_target << "\n";
    } else if (*c_cls) {
        gknot::RHD r = gknot::parse_rhd(read_file(rhd_path));
        std::cout << gknot::classify_pair(r, id1, id2).to_string() << "\n";
    } else if (*c_enum) {
        std::uint64_t valid = 0, shown = 0;
        std::uint64_t total = gknot::enumerate_rhds(budget, [&](const gknot::RHD& r) {
            bool ok = true;
            if (valid_only || count_only) ok = gknot::validate(r).empty();
            if (ok) ++valid;
            if (count_only || (valid_only && !ok)) return true;
            std::string line = gknot::serialize_rhd(r);
            for (auto& ch : line)
                if (ch == '\n') ch = ';';
            if (!line.empty() && line.back() == ';') line.pop_back();
            size_t pos = 0;
            while ((pos = line.find(';', pos)) != std::string::npos) {
                line.insert(pos + 1, " ");
                pos += 2;
            }
            std::cout << line << "\n";
            ++shown;
            return true;
        });
        if (count_only)
            std::cout << "total " << total << " valid " << valid << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gknot::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
