#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    std::string cmd = std::string(OKBODY_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string sample(const std::string& name) { return std::string(OKB_SAMPLES_DIR) + "/" + name; }

nlohmann::json vertices(std::initializer_list<std::pair<const char*, const char*>> pts)
{
    auto j = nlohmann::json::array();
    for (const auto& [x, y] : pts) j.push_back({x, y});
    return j;
}

}  // namespace

TEST(Cli, Zariski)
{
    auto r = run("zariski blp1 'H + E'");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(R"({"P": ["1","0"], "N": {"E": "1"}})"));
}

TEST(Cli, MumfordLimitingBody)
{
    auto r = run("body --kind limiting mumford H --flag Ca=2H");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["kind"], "limiting");
    EXPECT_EQ(j["vertices"], vertices({{"0", "0"}, {"1/2", "0"}}));
}

TEST(Cli, BigBodyCsv)
{
    auto r = run("body --kind big blp2 '3H - E1 - E2' --flag C=H --format csv");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "x1,x2\n0,0\n2,0\n1,2\n0,3\n");
}

TEST(Cli, ValuativeNinePoints)
{
    auto r = run("body --kind valuative ell9 C0 --flag C0 --fixed C0=1");
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(nlohmann::json::parse(r.out)["vertices"], vertices({{"1", "0"}}));
}

TEST(Cli, Constants)
{
    auto mu = run("mu blp1 'H + E' --curve E");
    ASSERT_EQ(mu.code, 0);
    EXPECT_NE(mu.out.find("\"2\""), std::string::npos);
    auto eps = run("epsilon blp1 H --curve E");
    ASSERT_EQ(eps.code, 0);
    EXPECT_NE(eps.out.find("\"1\""), std::string::npos);
}

TEST(Cli, ChambersAndBasis)
{
    auto r = run("chambers blp2 --flag C=H");
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["chambers"].size(), 5u);
    EXPECT_EQ(j["minkowski_basis"].size(), 4u);
    EXPECT_EQ(run("minkowski-basis blp2 --flag C=3H-E1-E2").code, 0);
    auto d = run("minkowski-decompose blp2 '3H - E1 - E2' --flag C=H");
    ASSERT_EQ(d.code, 0);
}

TEST(Cli, SimilarAndModelFile)
{
    auto s = run("similar " + sample("triangle.polygon.json") + " " + sample("triangle2.polygon.json"));
    ASSERT_EQ(s.code, 0);
    EXPECT_EQ(nlohmann::json::parse(s.out)["similar"], true);
    auto z = run("--model-file " + sample("blp2.surface.json") + " zariski '3/2*H - E1 - E2'");
    ASSERT_EQ(z.code, 0);
    EXPECT_EQ(nlohmann::json::parse(z.out)["N"]["L12"], "1/2");
}

TEST(Cli, LeadingMinusExpression)
{
    EXPECT_EQ(run("zariski blp1 -H").code, 1);
    EXPECT_EQ(run("zariski blp1 -E+2H").code, 0);
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run("zariski blp1 'H +'").code, 2);
    EXPECT_EQ(run("zariski nosuch H").code, 2);
    EXPECT_EQ(run("body blp1 H --flag Q").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("zariski blp1 'E - H'").code, 1);
    EXPECT_EQ(run("body --kind big mumford H --flag F").code, 1);
    EXPECT_EQ(run("--model-file " + sample("invalid.surface.json") + " zariski A").code, 3);
}

TEST(Cli, SvgOutput)
{
    std::string path = ::testing::TempDir() + "okb_body.svg";
    auto r = run("body --kind big blp2 '3H - E1 - E2' --flag C=H --svg " + path);
    ASSERT_EQ(r.code, 0);
    FILE* f = fopen(path.c_str(), "r");
    ASSERT_NE(f, nullptr);
    fclose(f);
}
