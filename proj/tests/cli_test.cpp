#include "condent/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace condent::cli {
namespace {

const std::string kDir = CONDENT_KB_DIR;
std::string kb(const char* name) { return kDir + "/" + name + ".kb"; }

struct Run {
    int code;
    std::string out, err;
};

Run query(const std::string& path, const std::string& q, Options opt = {}) {
    std::ostringstream out, err;
    int code = cmd_query(path, q, opt, out, err);
    return {code, out.str(), err.str()};
}

Run compare(const std::string& path, const std::string& q, const std::string& extra, Options opt = {}) {
    std::ostringstream out, err;
    int code = cmd_compare(path, q, extra, opt, out, err);
    return {code, out.str(), err.str()};
}

Run check(const std::string& path, Options opt = {}) {
    std::ostringstream out, err;
    int code = cmd_check(path, opt, out, err);
    return {code, out.str(), err.str()};
}

Options json(bool exact = false) {
    Options o;
    o.json = true;
    o.exact = exact;
    return o;
}

std::string temp_kb(const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / ("condent_cli_test_" + std::to_string(std::hash<std::string>{}(body)) + ".kb");
    std::ofstream(path) << body;
    return path.string();
}

TEST(Query, PenguinJsonIsExactAndOrdered) {
    auto r = query(kb("penguin"), "P(f | b & p)", json());
    EXPECT_EQ(r.code, kOk);
    EXPECT_EQ(r.out, "{\"feasible\":true,\"conditionable\":true,\"lower\":0.0,\"upper\":0.0}\n");
}

TEST(Query, TextReportsInterval) {
    Options exact;
    exact.exact = true;
    auto r = query(kb("marginals"), "P(a | b)", exact);
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("2/5"), std::string::npos);
    EXPECT_NE(r.out.find("witness"), std::string::npos);
}

TEST(ExitCodes, AllPaths) {
    EXPECT_EQ(check(kb("penguin")).code, kOk);
    auto bad = check(kb("contradiction"));
    EXPECT_EQ(bad.code, kInfeasible);
    EXPECT_NE(bad.out.find("line 2"), std::string::npos);
    EXPECT_NE(bad.out.find("line 3"), std::string::npos);
    EXPECT_EQ(query(kb("contradiction"), "P(a)").code, kInfeasible);

    auto cj = nlohmann::ordered_json::parse(check(kb("contradiction"), json()).out);
    EXPECT_EQ(cj["feasible"], false);
    EXPECT_NEAR(cj["infeasibility"].get<double>(), 0.3, 1e-9);
    EXPECT_EQ(cj["culprit_lines"], nlohmann::ordered_json::parse("[2,3]"));

    auto path = temp_kb("vars: a, b\nP(a) = 1\n");
    EXPECT_EQ(query(path, "P(b | ~a)").code, kNotConditionable);
    EXPECT_EQ(query(path, "P(b | ~a)", json()).out,
              "{\"feasible\":true,\"conditionable\":false,\"lower\":null,\"upper\":null}\n");

    auto missing = query(kDir + "/missing.kb", "P(a)");
    EXPECT_EQ(missing.code, kUsage);
    EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
    EXPECT_EQ(query(kb("marginals"), "P(zz)").code, kUsage);
    EXPECT_EQ(query(kb("marginals"), "P(a | 0)").code, kNotConditionable);
    EXPECT_EQ(query(temp_kb("vars: a\nP(a) = 2\n"), "P(a)").code, kUsage);
}

TEST(Compare, Verdicts) {
    auto birds = compare(kb("birds"), "P(f | b)", "p", json());
    EXPECT_EQ(birds.code, kOk);
    EXPECT_EQ(birds.out,
              "{\"base\":{\"feasible\":true,\"conditionable\":true,\"lower\":0.9,\"upper\":0.9},"
              "\"revised\":{\"feasible\":true,\"conditionable\":true,\"lower\":0.0,\"upper\":1.0},"
              "\"verdict\":\"WIDENED\"}\n");
    EXPECT_NE(compare(kb("birds"), "P(f | b)", "1", json()).out.find("UNCHANGED"), std::string::npos);
    EXPECT_NE(compare(kb("penguin"), "P(f | b)", "p", json()).out.find("SHIFTED"), std::string::npos);

    auto text = compare(kb("birds"), "P(f | b)", "p");
    EXPECT_NE(text.out.find("verdict   WIDENED"), std::string::npos);
    EXPECT_NE(text.out.find("can only narrow"), std::string::npos);
}

TEST(Modes, ExactAgreesWithFloatOnBundledKBs) {
    struct Case {
        const char* kb;
        const char* q;
    };
    for (auto c : {Case{"penguin", "P(f | b & p)"}, Case{"penguin", "P(f | b)"}, Case{"penguin", "P(p | b)"},
                   Case{"marginals", "P(a | b)"}, Case{"marginals", "P(a & b)"}, Case{"chain", "P(a)"},
                   Case{"birds", "P(f | b & p)"}, Case{"empty", "P(a)"}}) {
        auto file = load_kb_file(kb(c.kb));
        auto q = parse_query(c.q, file.kb.vocabulary());
        auto f = bounds<double>(file.kb, q);
        auto e = bounds<Rational>(file.kb, q);
        ASSERT_TRUE(f.lower && e.lower) << c.kb << " " << c.q;
        EXPECT_NEAR(*f.lower, static_cast<double>(*e.lower), 1e-6) << c.kb << " " << c.q;
        EXPECT_NEAR(*f.upper, static_cast<double>(*e.upper), 1e-6) << c.kb << " " << c.q;
    }
}

TEST(Oracle, AppendsGridResult) {
    Options o = json();
    o.oracle_resolution = 20;
    auto r = query(kb("chain"), "P(a)", o);
    EXPECT_EQ(r.code, kOk);
    auto j = nlohmann::ordered_json::parse(r.out);
    EXPECT_EQ(j.begin().key(), "feasible");
    EXPECT_EQ(j["oracle"]["method"], "grid");
    EXPECT_NEAR(j["oracle"]["lower"].get<double>(), 0.45, 1e-12);
    EXPECT_NEAR(j["oracle"]["upper"].get<double>(), 0.95, 1e-12);

    Options t;
    t.oracle_resolution = 10;
    EXPECT_NE(query(kb("marginals"), "P(a | b)", t).out.find("oracle (grid"), std::string::npos);
}

TEST(Laws, ReportHolds) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_laws(1, out, err), kOk);
    EXPECT_EQ(out.str().find("FAILS"), std::string::npos);
}

}  // namespace
}  // namespace condent::cli
