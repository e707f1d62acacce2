#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfspace/data.hpp"
#include "halfspace/quadrature.hpp"

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HALFSPACE_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("cli: invalid lambda exits with a usage error and no output") {
    const Run r = run("eval --kernel K --lambda 0 --yp 1,0");
    CHECK(r.code == 64);
    CHECK(r.out.empty());
    CHECK(run("eval --kernel K --lambda -2 --yp 1,0 --format json").out.empty());
}

TEST_CASE("cli: usage errors") {
    CHECK(run("").code == 64);
    CHECK(run("verify nope").code == 64);
    CHECK(run("eval --kernel KM --M 2 --yp 0,0").code == 64);
    CHECK(run("eval --kernel K --yp 1,0 --theta 2").code == 64);
}

TEST_CASE("cli: eval matches library calls exactly, in CSV and JSON") {
    const Run c = run("eval --solution u --data bump --M 0 --r 1,2 --theta 0,0.5");
    REQUIRE(c.code == 0);
    const auto rows = csv_rows(c.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0][5] == "value");
    const Run j = run("eval --solution u --data bump --M 0 --r 1,2 --theta 0,0.5 --format json");
    REQUIRE(j.code == 0);
    std::istringstream js(j.out);
    std::string line;
    const hs::BoundaryData f = hs::bump({0.0, 0.0}, 1.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(std::getline(js, line));
        const auto obj = nlohmann::json::parse(line);
        const double r = std::strtod(rows[i][0].c_str(), nullptr);
        const double th = std::strtod(rows[i][1].c_str(), nullptr);
        const double lib = hs::solution_u(f, 0, hs::HalfSpacePoint::polar(3, r, th), hs::QuadratureSpec{});
        CHECK(std::strtod(rows[i][5].c_str(), nullptr) == lib);
        CHECK(obj["value"].get<double>() == lib);
    }
}

TEST_CASE("cli: expand tables") {
    const Run c = run("expand --data exp_decay --m-max 2 --theta 0.4");
    REQUIRE(c.code == 0);
    const auto rows = csv_rows(c.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"m", "theta", "quadrature", "closed_form"});
    CHECK(std::strtod(rows[1][3].c_str(), nullptr) == 1.0);
    const Run rem = run("expand --data exp_decay --table remainders --M 0 --r 6 --theta 0.3 --format json");
    REQUIRE(rem.code == 0);
    const auto obj = nlohmann::json::parse(rem.out);
    CHECK(obj["remainder"].get<double>() == obj["direct"].get<double>());
    const Run div = run("expand --table divergence --r 10 --k-max 12");
    REQUIRE(div.code == 0);
    CHECK(csv_rows(div.out).size() == 14);
}

TEST_CASE("cli: verify is reproducible and reports exit status") {
    const Run a = run("verify prop31 --seed 42");
    const Run b = run("verify prop31 --seed 42 --jobs 2");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    std::istringstream is(a.out);
    std::string line;
    int n = 0;
    while (std::getline(is, line)) {
        CHECK(nlohmann::json::parse(line)["pass"] == true);
        ++n;
    }
    CHECK(n == 65);
}
