// SPDX-License-Identifier: Apache-2.0

#include "bwsts/bwsts.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "bwsts/analysis.hpp"
#include "bwsts/error.hpp"
#include "bwsts/model.hpp"

struct bwsts_model {
    bwsts::ModelFile model;
};

struct bwsts_report {
    bwsts::Report report;
    std::string json;
    std::string text;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_line = 0;
thread_local std::size_t g_column = 0;

void clear_error() {
    g_error.clear();
    g_line = g_column = 0;
}

bwsts_status fail(bwsts_status s, const std::string& msg) {
    g_error = msg;
    return s;
}

// Maps library exceptions to status codes; must be called from a catch block.
bwsts_status translate() {
    try {
        throw;
    } catch (const bwsts::ParseError& e) {
        g_line = e.line();
        g_column = e.column();
        return fail(BWSTS_ERR_PARSE, e.what());
    } catch (const bwsts::UsageError& e) {
        return fail(BWSTS_ERR_USAGE, e.what());
    } catch (const bwsts::ContractError& e) {
        return fail(BWSTS_ERR_CONTRACT, e.what());
    } catch (const bwsts::InputError& e) {
        return fail(BWSTS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BWSTS_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(BWSTS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(BWSTS_ERR_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    auto* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

}  // namespace

extern "C" {

const char* bwsts_version(void) { return BWSTS_VERSION; }

const char* bwsts_last_error(void) { return g_error.c_str(); }
size_t bwsts_last_error_line(void) { return g_line; }
size_t bwsts_last_error_column(void) { return g_column; }

bwsts_status bwsts_model_parse(const char* text, bwsts_model** out) {
    clear_error();
    if (!text || !out) return fail(BWSTS_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new bwsts_model{bwsts::parse_model(text)};
        return BWSTS_OK;
    } catch (...) {
        return translate();
    }
}

bwsts_status bwsts_model_load(const char* path, bwsts_model** out) {
    clear_error();
    if (!path || !out) return fail(BWSTS_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    try {
        *out = new bwsts_model{bwsts::load_model(path)};
        return BWSTS_OK;
    } catch (const bwsts::InputError& e) {
        return fail(BWSTS_ERR_IO, e.what());
    } catch (...) {
        return translate();
    }
}

void bwsts_model_free(bwsts_model* model) { delete model; }

bwsts_model_kind bwsts_model_get_kind(const bwsts_model* model) {
    return model && model->model.kind == bwsts::ModelKind::Fifo ? BWSTS_FIFO : BWSTS_COUNTER;
}

const char* bwsts_model_name(const bwsts_model* model) { return model ? model->model.name().c_str() : ""; }

bwsts_status bwsts_model_print(const bwsts_model* model, char** out) {
    clear_error();
    if (!model || !out) return fail(BWSTS_ERR_INVALID_ARGUMENT, "null argument");
    try {
        *out = dup(bwsts::print_model(model->model));
        return BWSTS_OK;
    } catch (...) {
        return translate();
    }
}

void bwsts_check_options_init(bwsts_check_options* options) {
    if (!options) return;
    options->budget = bwsts::kDefaultBudget;
    options->target = nullptr;
    options->assert_strict_monotone = 0;
    options->assert_cover_monotone = 0;
    options->want_dot = 0;
}

bwsts_status bwsts_check(const bwsts_model* model, const char* analysis, const bwsts_check_options* options,
                         bwsts_report** out) {
    clear_error();
    if (!model || !analysis || !out) return fail(BWSTS_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    auto a = bwsts::parse_analysis(analysis);
    if (!a) return fail(BWSTS_ERR_USAGE, std::string("unknown analysis '") + analysis + "'");
    bwsts::CheckOptions opt;
    if (options) {
        if (options->budget == 0) return fail(BWSTS_ERR_INVALID_ARGUMENT, "budget must be at least 1");
        opt.budget = options->budget;
        if (options->target) opt.target = options->target;
        opt.assert_strict_monotone = options->assert_strict_monotone != 0;
        opt.assert_cover_monotone = options->assert_cover_monotone != 0;
        opt.want_dot = options->want_dot != 0;
    }
    try {
        auto* r = new bwsts_report{bwsts::cmd_check(model->model, *a, opt), {}, {}};
        r->json = r->report.to_json();
        r->text = r->report.to_text();
        *out = r;
        return BWSTS_OK;
    } catch (...) {
        return translate();
    }
}

void bwsts_report_free(bwsts_report* report) { delete report; }
int bwsts_report_exit_code(const bwsts_report* report) { return report ? report->report.exit_code : 1; }
const char* bwsts_report_verdict(const bwsts_report* report) { return report ? report->report.verdict.c_str() : ""; }
const char* bwsts_report_json(const bwsts_report* report) { return report ? report->json.c_str() : ""; }
const char* bwsts_report_text(const bwsts_report* report) { return report ? report->text.c_str() : ""; }
const char* bwsts_report_dot(const bwsts_report* report) { return report ? report->report.dot.c_str() : ""; }

bwsts_status bwsts_product(const bwsts_model* model, int prune, bwsts_model** out, char** text) {
    clear_error();
    if (!model || !out) return fail(BWSTS_ERR_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    if (text) *text = nullptr;
    try {
        auto p = bwsts::build_product(model->model, prune != 0);
        char* t = text ? dup(p.text) : nullptr;
        *out = new bwsts_model{std::move(p.model)};
        if (text) *text = t;
        return BWSTS_OK;
    } catch (...) {
        return translate();
    }
}

void bwsts_string_free(char* s) { std::free(s); }

}  // extern "C"
