// Copyright 2026 The qeraser Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int exit_code;
    std::string out;
};

std::string quote(const std::string &s) {
    return "'" + s + "'";
}

Run run_cli(const std::string &args) {
    std::string cmd = quote(QERASER_CLI_PATH) + " " + args + " 2>&1";
    Run r{-1, {}};
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

struct Csv {
    std::vector<std::string> header;
    std::map<std::string, std::vector<double>> cols;
};

Csv read_csv(const fs::path &path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    Csv csv;
    std::string line;
    std::getline(in, line);
    std::stringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) {
        csv.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        std::stringstream ls(line);
        std::size_t c = 0;
        for (std::string cell; std::getline(ls, cell, ','); ++c) {
            csv.cols[csv.header.at(c)].push_back(std::strtod(cell.c_str(), nullptr));
        }
    }
    return csv;
}

std::string slurp(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class Scratch {
   public:
    Scratch() {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("qeraser_cli_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    ~Scratch() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path path(const std::string &name) const {
        return dir_ / name;
    }
    fs::path write(const std::string &name, const nlohmann::json &doc) const {
        fs::path p = path(name);
        std::ofstream(p) << doc.dump(2);
        return p;
    }

   private:
    fs::path dir_;
};

nlohmann::json example(const std::string &name) {
    return nlohmann::json::parse(slurp(fs::path(QERASER_CONFIG_DIR) / name));
}

double column_max(const std::vector<double> &v) {
    return *std::max_element(v.begin(), v.end());
}

}  // namespace

TEST_CASE("simulate with the eraser basis") {
    Scratch tmp;
    fs::path out = tmp.path("fig3.csv");
    Run r = run_cli("simulate -c " + quote(std::string(QERASER_CONFIG_DIR) + "/fig3.json") + " -o " + quote(out));
    REQUIRE(r.exit_code == 0);
    Csv csv = read_csv(out);
    CHECK(csv.header == std::vector<std::string>{"x", "p_total", "p_alpha", "p_beta", "p_gamma"});
    const auto &total = csv.cols["p_total"];
    REQUIRE(total.size() == 4096);
    double peak = column_max(total);
    for (std::size_t i = 0; i < total.size(); ++i) {
        double sum = csv.cols["p_alpha"][i] + csv.cols["p_beta"][i] + csv.cols["p_gamma"][i];
        CHECK(std::abs(sum - total[i]) <= 1e-12 * peak);
    }
    CHECK(csv.cols["x"].front() == -120.0);
    CHECK(csv.cols["x"].back() == 120.0);
}

TEST_CASE("simulate without a detector gives the pure pattern") {
    Scratch tmp;
    nlohmann::json doc = example("fig2.json");
    doc["detector"]["enabled"] = false;
    doc["output"]["path"] = tmp.path("pure.csv").string();
    REQUIRE(run_cli("simulate -c " + quote(tmp.write("pure.json", doc))).exit_code == 0);
    Csv csv = read_csv(tmp.path("pure.csv"));
    CHECK(csv.header == std::vector<std::string>{"x", "p_total"});
    const auto &p = csv.cols["p_total"];
    auto peak = std::max_element(p.begin(), p.end());
    double x_peak = csv.cols["x"][static_cast<std::size_t>(peak - p.begin())];
    CHECK(std::abs(x_peak) < 0.1);
    CHECK(*peak == doctest::Approx(0.0446546334237060812).epsilon(1e-5));
}

TEST_CASE("sx3 readout differs from a third of the marginal") {
    Scratch tmp;
    nlohmann::json doc = example("fig2.json");
    doc["output"]["path"] = tmp.path("sx.csv").string();
    REQUIRE(run_cli("simulate -c " + quote(tmp.write("sx.json", doc))).exit_code == 0);
    Csv csv = read_csv(tmp.path("sx.csv"));
    CHECK(csv.header == std::vector<std::string>{"x", "p_total", "p_up", "p_right", "p_down"});
    double peak = column_max(csv.cols["p_total"]);
    double gap = 0.0;
    for (std::size_t i = 0; i < csv.cols["p_up"].size(); ++i) {
        gap = std::max(gap, std::abs(csv.cols["p_up"][i] - csv.cols["p_total"][i] / 3.0));
    }
    CHECK(gap > 0.1 * peak / 3.0);
}

TEST_CASE("reruns are byte-identical and stdout matches the file") {
    Scratch tmp;
    nlohmann::json doc = example("fig3.json");
    doc["output"]["path"] = tmp.path("a.csv").string();
    fs::path cfg = tmp.write("a.json", doc);
    REQUIRE(run_cli("simulate -c " + quote(cfg)).exit_code == 0);
    REQUIRE(run_cli("simulate -c " + quote(cfg) + " -o " + quote(tmp.path("b.csv"))).exit_code == 0);
    CHECK(slurp(tmp.path("a.csv")) == slurp(tmp.path("b.csv")));

    doc["output"].erase("path");
    fs::path to_stdout = tmp.write("stdout.json", doc);
    std::string cmd = quote(QERASER_CLI_PATH) + " simulate -c " + quote(to_stdout) + " > " + quote(tmp.path("c.csv"));
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(slurp(tmp.path("a.csv")) == slurp(tmp.path("c.csv")));
}

TEST_CASE("json output carries the resolved parameters") {
    Scratch tmp;
    nlohmann::json doc = example("fig3.json");
    doc["output"] = {{"format", "json"}, {"path", tmp.path("o.json").string()}};
    REQUIRE(run_cli("simulate -c " + quote(tmp.write("j.json", doc))).exit_code == 0);
    nlohmann::json out = nlohmann::json::parse(slurp(tmp.path("o.json")));
    CHECK(out["parameters"]["a"] == 50.0);
    CHECK(out["parameters"]["omega"] == 2501.0);
    CHECK(std::abs(out["parameters"]["ct2"].get<double>() - 0.0159545006349565265) < 1e-17);
    CHECK(out["parameters"]["detector"] == "eraser");
    CHECK(out["columns"]["p_beta"].size() == 4096);
}

TEST_CASE("normalized output gives conditional densities") {
    Scratch tmp;
    nlohmann::json doc = example("fig3.json");
    doc["grid"] = {{"xmin", -700.0}, {"xmax", 700.0}, {"points", 20001}};
    doc["output"] = {{"path", tmp.path("n.csv").string()}, {"normalize", true}};
    REQUIRE(run_cli("simulate -c " + quote(tmp.write("n.json", doc))).exit_code == 0);
    Csv csv = read_csv(tmp.path("n.csv"));
    double h = 1400.0 / 20000.0;
    for (const char *col : {"p_total", "p_alpha", "p_beta", "p_gamma"}) {
        const auto &v = csv.cols[col];
        double sum = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            sum += (i == 0 || i + 1 == v.size() ? 0.5 : 1.0) * v[i];
        }
        CAPTURE(col);
        CHECK(sum * h == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("verify suites") {
    std::string cfg = quote(std::string(QERASER_CONFIG_DIR) + "/default.json");
    Run all = run_cli("verify -c " + cfg + " --suite all");
    CHECK(all.exit_code == 0);
    CHECK(all.out.find("FAIL") == std::string::npos);
    Run sorkin = run_cli("verify -c " + cfg + " --suite sorkin");
    CHECK(sorkin.exit_code == 0);
    CHECK(sorkin.out.find("sorkin.max_abs_over_peak") != std::string::npos);
    CHECK(run_cli("verify -c " + quote(std::string(QERASER_CONFIG_DIR) + "/farfield.json")).exit_code == 0);
    CHECK(run_cli("verify -c " + cfg + " --suite bogus").exit_code == 2);
}

TEST_CASE("a non-unitary custom basis is a config error") {
    Scratch tmp;
    nlohmann::json doc = example("default.json");
    doc["detector"] = {{"basis", "custom"}, {"matrix", {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}}};
    Run r = run_cli("verify -c " + quote(tmp.write("bad.json", doc)) + " --suite sumrule");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("detector.matrix") != std::string::npos);
}

TEST_CASE("sweep over a") {
    Scratch tmp;
    Run r = run_cli("sweep -c " + quote(std::string(QERASER_CONFIG_DIR) + "/fig3.json") +
                    " --param a --values 10,50,250 --out-dir " + quote(tmp.path("sw")));
    REQUIRE(r.exit_code == 0);
    for (const char *f : {"fig3_a_10.csv", "fig3_a_50.csv", "fig3_a_250.csv"}) {
        CHECK(fs::exists(tmp.path("sw") / f));
    }
    Csv s = read_csv(tmp.path("sw") / "fig3_a_summary.csv");
    CHECK(s.header == std::vector<std::string>{"value", "omega", "ct2", "V_total", "V_alpha", "V_beta", "V_gamma",
                                               "sumrule_residual"});
    REQUIRE(s.cols["value"].size() == 3);
    for (double res : s.cols["sumrule_residual"]) {
        CHECK(res <= 1e-12);
    }
}

TEST_CASE("sweep over d: the which-way pattern has no fringes") {
    Scratch tmp;
    nlohmann::json doc = example("fig3.json");
    doc["detector"]["basis"] = "computational";
    Run r = run_cli("sweep -c " + quote(tmp.write("w.json", doc)) + " --param d --values 2,5,10 --out-dir " +
                    quote(tmp.path("sw")));
    REQUIRE(r.exit_code == 0);
    Csv s = read_csv(tmp.path("sw") / "fig3_d_summary.csv");
    for (double v : s.cols["V_total"]) {
        CHECK(std::abs(v) < 1e-9);
    }
}

TEST_CASE("sweep over epsilon reports omega") {
    Scratch tmp;
    Run r = run_cli("sweep -c " + quote(std::string(QERASER_CONFIG_DIR) + "/fig3.json") +
                    " --param epsilon --values 0.5,1,2 --out-dir " + quote(tmp.path("sw")));
    REQUIRE(r.exit_code == 0);
    Csv s = read_csv(tmp.path("sw") / "fig3_epsilon_summary.csv");
    for (std::size_t i = 0; i < 3; ++i) {
        double eps = s.cols["value"][i];
        CHECK(s.cols["omega"][i] == doctest::Approx(eps * eps + 2500.0 / (eps * eps)).epsilon(1e-15));
        CHECK(s.cols["ct2"][i] ==
              doctest::Approx(std::sqrt(2.0 / (std::numbers::pi * s.cols["omega"][i]))).epsilon(1e-15));
    }
}

TEST_CASE("exit codes") {
    Scratch tmp;
    std::string fig3 = quote(std::string(QERASER_CONFIG_DIR) + "/fig3.json");
    CHECK(run_cli("sweep -c " + fig3 + " --param lambda --values 1 --out-dir " + quote(tmp.path("x"))).exit_code == 2);
    CHECK(run_cli("sweep -c " + fig3 + " --param a --values -1 --out-dir " + quote(tmp.path("x"))).exit_code == 2);
    CHECK(run_cli("simulate -c " + quote(tmp.path("missing.json"))).exit_code == 2);
    CHECK(run_cli("simulate").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);

    std::ofstream(tmp.path("broken.json")) << "{\"slits\": ";
    Run broken = run_cli("simulate -c " + quote(tmp.path("broken.json")));
    CHECK(broken.exit_code == 2);

    nlohmann::json doc = example("fig3.json");
    doc["slits"]["epsilon"] = -1.0;
    Run neg = run_cli("simulate -c " + quote(tmp.write("neg.json", doc)));
    CHECK(neg.exit_code == 2);
    CHECK(neg.out.find("slits.epsilon") != std::string::npos);

    Run alias = run_cli("simulate --oracle -c " + quote(std::string(QERASER_CONFIG_DIR) + "/farfield.json") + " -o " +
                        quote(tmp.path("ff.csv")));
    CHECK(alias.exit_code == 3);
    CHECK_FALSE(fs::exists(tmp.path("ff.csv")));

    doc = example("fig3.json");
    doc["grid"]["points"] = 3000;
    CHECK(run_cli("simulate --oracle -c " + quote(tmp.write("np2.json", doc)) + " -o " + quote(tmp.path("o.csv")))
              .exit_code == 2);

    CHECK(run_cli("simulate --oracle -c " + fig3 + " -o " + quote(tmp.path("ok.csv"))).exit_code == 0);
}
