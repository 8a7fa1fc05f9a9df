// SPDX-License-Identifier: Apache-2.0

// Exercises the shared library through its C interface only.

#include <doctest.h>

#include <cstring>
#include <string>

#include "bwsts/bwsts.h"

namespace {

std::string model_path(const char* name) { return std::string(BWSTS_MODELS_DIR) + "/" + name; }

struct Model {
    bwsts_model* p = nullptr;
    ~Model() { bwsts_model_free(p); }
};

struct Report {
    bwsts_report* p = nullptr;
    ~Report() { bwsts_report_free(p); }
};

}  // namespace

TEST_CASE("version string") { CHECK(std::strlen(bwsts_version()) > 0); }

TEST_CASE("load, check and read a report") {
    Model m;
    REQUIRE(bwsts_model_load(model_path("m1.model").c_str(), &m.p) == BWSTS_OK);
    CHECK(bwsts_model_get_kind(m.p) == BWSTS_FIFO);
    CHECK(std::string(bwsts_model_name(m.p)) == "m1");
    bwsts_check_options opt;
    bwsts_check_options_init(&opt);
    CHECK(opt.budget == 10000);
    CHECK(opt.target == nullptr);
    opt.want_dot = 1;
    Report r;
    REQUIRE(bwsts_check(m.p, "boundedness", &opt, &r.p) == BWSTS_OK);
    CHECK(std::string(bwsts_report_verdict(r.p)) == "UNBOUNDED");
    CHECK(bwsts_report_exit_code(r.p) == 0);
    CHECK(std::string(bwsts_report_json(r.p)).find("\"verdict\": \"UNBOUNDED\"") != std::string::npos);
    CHECK(std::string(bwsts_report_text(r.p)).find("UNBOUNDED") != std::string::npos);
    CHECK(std::string(bwsts_report_dot(r.p)).rfind("digraph", 0) == 0);
}

TEST_CASE("x0-coverability through the C interface") {
    Model m;
    REQUIRE(bwsts_model_load(model_path("m8.model").c_str(), &m.p) == BWSTS_OK);
    bwsts_check_options opt;
    bwsts_check_options_init(&opt);
    opt.target = "q2:(3)";
    Report r;
    REQUIRE(bwsts_check(m.p, "x0-cover", &opt, &r.p) == BWSTS_OK);
    CHECK(std::string(bwsts_report_verdict(r.p)) == "COVERABLE");

    opt.target = nullptr;
    Report u;
    CHECK(bwsts_check(m.p, "x0-cover", &opt, &u.p) == BWSTS_ERR_USAGE);
    CHECK(u.p == nullptr);
    CHECK(std::strlen(bwsts_last_error()) > 0);
}

TEST_CASE("status codes") {
    Model m;
    CHECK(bwsts_model_parse("counter t\nstates p\ncounters x\np -- inc(y) --> p\ninit p\n", &m.p) == BWSTS_ERR_PARSE);
    CHECK(m.p == nullptr);
    CHECK(bwsts_last_error_line() == 4);
    CHECK(bwsts_last_error_column() > 0);
    CHECK(bwsts_model_load("/nonexistent/x.model", &m.p) == BWSTS_ERR_IO);
    CHECK(bwsts_model_parse(nullptr, &m.p) == BWSTS_ERR_INVALID_ARGUMENT);

    REQUIRE(bwsts_model_load(model_path("m1.model").c_str(), &m.p) == BWSTS_OK);
    Report r;
    CHECK(bwsts_check(m.p, "frobnicate", nullptr, &r.p) == BWSTS_ERR_USAGE);
    CHECK(bwsts_check(m.p, "cmrz", nullptr, &r.p) == BWSTS_ERR_USAGE);
    bwsts_check_options opt;
    bwsts_check_options_init(&opt);
    opt.budget = 0;
    CHECK(bwsts_check(m.p, "termination", &opt, &r.p) == BWSTS_ERR_INVALID_ARGUMENT);
    CHECK(bwsts_check(nullptr, "termination", nullptr, &r.p) == BWSTS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("printing and product") {
    Model m;
    REQUIRE(bwsts_model_load(model_path("m4.model").c_str(), &m.p) == BWSTS_OK);
    char* text = nullptr;
    REQUIRE(bwsts_model_print(m.p, &text) == BWSTS_OK);
    CHECK(std::string(text).find("bound c: (ab)") != std::string::npos);
    bwsts_string_free(text);

    Model p;
    char* ptext = nullptr;
    REQUIRE(bwsts_product(m.p, 1, &p.p, &ptext) == BWSTS_OK);
    CHECK(std::string(ptext).find("letter_map") != std::string::npos);
    bwsts_string_free(ptext);
    Report r;
    REQUIRE(bwsts_check(p.p, "termination", nullptr, &r.p) == BWSTS_OK);
    CHECK(std::string(bwsts_report_verdict(r.p)) == "TERMINATING");

    Model raw;
    REQUIRE(bwsts_model_load(model_path("m3.model").c_str(), &raw.p) == BWSTS_OK);
    Model none;
    CHECK(bwsts_product(raw.p, 1, &none.p, nullptr) == BWSTS_ERR_USAGE);
}
