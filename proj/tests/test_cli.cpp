#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "heats/api/service.hpp"
#include "support/subprocess.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;
using heats::testkit::Child;
using heats::testkit::run_process;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "heats");
  std::ostringstream out;
  std::ostringstream err;
  int code = heats::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kSeed = HEATS_SEED_DIR;

class DataCopy {
 public:
  DataCopy() {
    std::random_device rd;
    dir_ = fs::temp_directory_path() / ("heats-cli-" + std::to_string(rd()));
    fs::create_directories(dir_);
    for (const auto& entry : fs::directory_iterator(kSeed)) fs::copy(entry.path(), dir_ / entry.path().filename());
  }
  ~DataCopy() { fs::remove_all(dir_); }
  std::string path() const { return dir_.string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }
  void remove(const std::string& name) const { fs::remove(dir_ / name); }

 private:
  fs::path dir_;
};

std::vector<std::string> brasov(std::vector<std::string> extra = {}) {
  std::vector<std::string> args = {"size", "--city", "Brașov", "--destination", "Rooms and lobbies",
                                   "--levels", "1", "--av-ratio", "0.80", "--area", "100",
                                   "--height", "3", "--data-dir", kSeed};
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

}  // namespace

TEST(CliSize, TextOutput) {
  auto r = run(brasov());
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Result: 9.4710 kW (8.1451 MCal)\n");
  EXPECT_EQ(r.err, "");
}

TEST(CliSize, JsonMatchesApi) {
  auto r = run(brasov({"--json"}));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "{\"q_kw\":9.471,\"q_mcal\":8.1451,\"q_watts\":9471.0,\"gn_used\":0.77,"
            "\"gn_clamped\":false,\"volume_m3\":300.0,\"t_inside_c\":20.0,\"t_outside_c\":-21.0}\n");
}

TEST(CliSize, CaseInsensitiveNames) {
  auto args = brasov();
  args[2] = "  BRAȘOV ";
  args[4] = "rooms AND lobbies";
  EXPECT_EQ(run(args).out, "Result: 9.4710 kW (8.1451 MCal)\n");
}

TEST(CliSize, ValidationFailuresExit2) {
  auto args = brasov();
  args[2] = "Atlantis";
  auto r = run(args);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Atlantis"), std::string::npos);

  args = brasov();
  args[12] = "0";
  EXPECT_EQ(run(args).code, 2);
  args[12] = "abc";
  EXPECT_EQ(run(args).code, 2);

  args = brasov();
  args[6] = "7";
  EXPECT_EQ(run(args).code, 2);

  EXPECT_EQ(run({"size", "--city", "Arad"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(CliSize, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("size"), std::string::npos);
}

TEST(CliSize, MissingDataExits1) {
  auto args = brasov();
  args.back() = "/nonexistent/heats";
  auto r = run(args);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cities.csv"), std::string::npos);
}

TEST(CliDevices, ReferenceRequirement) {
  auto r = run({"devices", "--required-kw", "11.285", "--data-dir", kSeed});
  ASSERT_EQ(r.code, 0) << r.err;
  auto first = r.out.find("Euro-3 18 ");
  auto second = r.out.find("Euro-3 18/150");
  auto third = r.out.find("Euro-3 18/200");
  ASSERT_NE(first, std::string::npos);
  EXPECT_LT(first, second);
  EXPECT_LT(second, third);
  EXPECT_EQ(r.out.find("Uno-3"), std::string::npos);
  EXPECT_EQ(r.out.rfind("Producer", 0), 0u);
}

TEST(CliDevices, FilterAndJson) {
  auto r = run({"devices", "--required-kw", "11.285", "--fuel", "GPL", "--data-dir", kSeed});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "no matching devices\n");

  r = run({"devices", "--required-kw", "11.285", "--json", "--data-dir", kSeed});
  ASSERT_EQ(r.code, 0);
  Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["total"], 3);
  EXPECT_EQ(doc["devices"][0]["model"], "Euro-3 18");
}

TEST(CliDevices, UsageErrors) {
  EXPECT_EQ(run({"devices", "--data-dir", kSeed}).code, 2);
  EXPECT_EQ(run({"devices", "--required-kw", "-1", "--data-dir", kSeed}).code, 2);
  EXPECT_EQ(run({"devices", "--required-kw", "5", "--headroom", "0.9", "--data-dir", kSeed}).code, 2);
  EXPECT_EQ(run({"devices", "--required-kw", "5", "--fuel", "Wood", "--data-dir", kSeed}).code, 2);
  EXPECT_EQ(run({"devices", "--required-kw", "5", "--data-dir", "/nonexistent"}).code, 1);
}

TEST(CliValidate, SeedIsClean) {
  auto r = run({"validate", "--data-dir", kSeed});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "cities.csv: OK\ndestinations.csv: OK\ngn.csv: OK\ndevices.json: OK\n4 files OK\n");
}

TEST(CliValidate, ReportsOffendingRow) {
  DataCopy data;
  data.write("gn.csv",
             "levels,av_ratio,gn,open_upper\n1,0.7,0.74,false\n1,0.8,0.70,false\n");
  auto r = run({"validate", "--data-dir", data.path()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("gn.csv: 1 error\n  gn.csv:3: field 'gn'"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("1 of 4 files invalid"), std::string::npos);
}

TEST(CliValidate, MissingFile) {
  DataCopy data;
  data.remove("cities.csv");
  auto r = run({"validate", "--data-dir", data.path()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("cities.csv: 1 error"), std::string::npos);

  EXPECT_EQ(run({"validate", "--data-dir", "/nonexistent/heats"}).code, 1);
}

TEST(CliValidate, BadDeviceFile) {
  DataCopy data;
  data.write("devices.json", "[{\"producer\": \"X\"}]");
  auto r = run({"validate", "--data-dir", data.path()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("devices.json: "), std::string::npos);
  EXPECT_NE(r.out.find("devices.json:1: record 1"), std::string::npos) << r.out;
}

TEST(CliBinary, DataDirFromEnvironment) {
  auto r = run_process({HEATS_CLI_PATH, "validate"}, {"HEATS_DATA_DIR=" + kSeed});
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("4 files OK"), std::string::npos);

  r = run_process({HEATS_CLI_PATH, "validate"}, {"HEATS_DATA_DIR=/nonexistent/heats"});
  EXPECT_EQ(r.exit_code, 1);
}

TEST(CliBinary, ServeEphemeralPortAndShutdown) {
  Child child({HEATS_CLI_PATH, "serve", "--addr", "127.0.0.1:0", "--data-dir", kSeed});
  auto line = child.read_line(std::chrono::seconds(10));
  ASSERT_TRUE(line.has_value());
  const std::string prefix = "listening on http://127.0.0.1:";
  ASSERT_EQ(line->rfind(prefix, 0), 0u) << *line;
  int port = std::stoi(line->substr(prefix.size()));
  EXPECT_GT(port, 0);

  // A second instance on the now-taken port fails to bind.
  auto clash = run_process(
      {HEATS_CLI_PATH, "serve", "--addr", "127.0.0.1:" + std::to_string(port), "--data-dir", kSeed});
  EXPECT_EQ(clash.exit_code, 1);
  EXPECT_NE(clash.err.find("cannot bind"), std::string::npos) << clash.err;

  child.signal(SIGTERM);
  auto result = child.wait();
  EXPECT_EQ(result.exit_code, 0) << result.err;
}

TEST(CliBinary, ServeAddressFromEnvironment) {
  Child child({HEATS_CLI_PATH, "serve", "--data-dir", kSeed}, {"HEATS_ADDR=127.0.0.1:0"});
  auto line = child.read_line(std::chrono::seconds(10));
  ASSERT_TRUE(line.has_value());
  EXPECT_EQ(line->rfind("listening on http://127.0.0.1:", 0), 0u);
  child.signal(SIGINT);
  EXPECT_EQ(child.wait().exit_code, 0);
}

TEST(CliBinary, ServeFailures) {
  auto r = run_process({HEATS_CLI_PATH, "serve", "--addr", "127.0.0.1:0", "--data-dir", "/nonexistent"});
  EXPECT_EQ(r.exit_code, 1);
  r = run_process({HEATS_CLI_PATH, "serve", "--addr", "nonsense", "--data-dir", kSeed});
  EXPECT_EQ(r.exit_code, 2);
}
