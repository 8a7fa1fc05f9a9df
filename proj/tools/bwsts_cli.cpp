// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the analysis library only through the C
// interface in bwsts/bwsts.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "bwsts/bwsts.h"

namespace {

constexpr int kExitUsage = 1;

struct ModelDeleter {
    void operator()(bwsts_model* m) const { bwsts_model_free(m); }
};
struct ReportDeleter {
    void operator()(bwsts_report* r) const { bwsts_report_free(r); }
};
using ModelPtr = std::unique_ptr<bwsts_model, ModelDeleter>;
using ReportPtr = std::unique_ptr<bwsts_report, ReportDeleter>;

int report_error(const char* context) {
    std::cerr << "bwsts: " << context << ": " << bwsts_last_error() << '\n';
    return kExitUsage;
}

bool load(const std::string& path, ModelPtr& out) {
    bwsts_model* m = nullptr;
    if (bwsts_model_load(path.c_str(), &m) != BWSTS_OK) return false;
    out.reset(m);
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundedness, termination and coverability checks for counter and FIFO machines"};
    app.set_version_flag("--version", std::string(bwsts_version()));
    app.require_subcommand(1);

    std::string analysis, model_path, target, dot_path;
    std::size_t budget = 10000;
    bool json = false, strict = false, cover = false;
    auto* check = app.add_subcommand("check", "run one analysis on a model file");
    check->add_option("analysis", analysis, "boundedness | termination | nonterm-iterable | cmrz | x0-cover")
        ->required()
        ->check(CLI::IsMember({"boundedness", "termination", "nonterm-iterable", "cmrz", "x0-cover"}));
    check->add_option("model", model_path, "model file")->required();
    check->add_option("--budget", budget, "node / step budget")->check(CLI::PositiveNumber);
    check->add_option("--target", target, "coverability target, q:(v1,..) or q:\"w\"@ch");
    check->add_flag("--assert-strict-monotone", strict, "assert strict branch-monotony of the machine");
    check->add_flag("--assert-cover-monotone", cover, "assert cover-monotony from the initial state");
    check->add_option("--dot", dot_path, "write the reduced reachability tree as DOT");
    check->add_flag("--json", json, "print the report as JSON");

    std::string product_in, product_out;
    bool no_prune = false;
    auto* product = app.add_subcommand("product", "build the input-bounded product machine");
    product->add_option("model", product_in, "fifo model with a bound clause per channel")->required();
    product->add_option("-o,--output", product_out, "output model file ('-' for stdout)")->required();
    product->add_flag("--no-prune", no_prune, "keep control states that cannot complete a bound word");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    if (*check) {
        ModelPtr model;
        if (!load(model_path, model)) return report_error(model_path.c_str());
        bwsts_check_options opt;
        bwsts_check_options_init(&opt);
        opt.budget = budget;
        opt.target = target.empty() ? nullptr : target.c_str();
        opt.assert_strict_monotone = strict;
        opt.assert_cover_monotone = cover;
        opt.want_dot = !dot_path.empty();
        bwsts_report* raw = nullptr;
        if (bwsts_check(model.get(), analysis.c_str(), &opt, &raw) != BWSTS_OK) return report_error("check");
        ReportPtr report(raw);
        std::cout << (json ? std::string(bwsts_report_json(raw)) + "\n" : std::string(bwsts_report_text(raw)));
        if (!dot_path.empty() && *bwsts_report_dot(raw) && !write_file(dot_path, bwsts_report_dot(raw))) {
            std::cerr << "bwsts: cannot write " << dot_path << '\n';
            return kExitUsage;
        }
        return bwsts_report_exit_code(raw);
    }

    ModelPtr model;
    if (!load(product_in, model)) return report_error(product_in.c_str());
    bwsts_model* raw = nullptr;
    char* text = nullptr;
    if (bwsts_product(model.get(), no_prune ? 0 : 1, &raw, &text) != BWSTS_OK) return report_error("product");
    ModelPtr out(raw);
    const std::string printed = text;
    bwsts_string_free(text);
    if (!write_file(product_out, printed)) {
        std::cerr << "bwsts: cannot write " << product_out << '\n';
        return kExitUsage;
    }
    if (product_out != "-") std::cerr << "wrote " << bwsts_model_name(out.get()) << " to " << product_out << '\n';
    return 0;
}
