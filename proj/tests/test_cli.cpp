// Copyright 2026 The qstar Authors
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


#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

const std::string kCli = QSTAR_CLI;
const std::string kData = QSTAR_TEST_DATA_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string dataset(long level) { return kData + "/datasets/level_" + std::to_string(level) + ".json"; }

}  // namespace

TEST_CASE("derive-equation") {
  const Run r = run("derive-equation --check-table " + dataset(67));
  CHECK(r.code == 0);
  CHECK(r.out.find("x^6") != std::string::npos);
  CHECK(run("derive-equation --check-table " + dataset(170)).code == 0);
  CHECK(run("derive-equation /nonexistent.json").code == 3);

  // Level 73 data relabelled as 67 derives a different sextic.
  std::ifstream in(dataset(73));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string key = "\"level\":73";
  REQUIRE(text.find(key) != std::string::npos);
  text.replace(text.find(key), key.size(), "\"level\":67");
  const auto tmp = std::filesystem::temp_directory_path() / "qstar_cli_mislabelled.json";
  std::ofstream(tmp) << text;
  CHECK(run("derive-equation " + tmp.string()).code == 0);
  CHECK(run("derive-equation --check-table " + tmp.string()).code == 2);
  std::filesystem::remove(tmp);
}

TEST_CASE("identify-cm") {
  Run r = run("identify-cm --minpoly \"1 -54000\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("D = -12") != std::string::npos);
  r = run("identify-cm --minpoly \"1 -1\"");
  CHECK(r.code == 0);
  CHECK(r.out.find("no CM match") != std::string::npos);
  CHECK(run("identify-cm --minpoly \"2 1\"").code == 3);
  CHECK(run("identify-cm --minpoly \"1 x\"").code == 3);
  CHECK(run("identify-cm").code == 3);
}

TEST_CASE("pipeline exit codes and determinism") {
  const Run a = run("pipeline " + dataset(67));
  const Run b = run("-j 4 pipeline " + dataset(67));
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("pipeline --point inf+ " + dataset(67)).code == 3);
  CHECK(run("pipeline --point 5,5 " + dataset(67)).code == 3);
  CHECK(run("pipeline " + dataset(390)).code == 4);
}

TEST_CASE("search-points and validate-all") {
  const Run r = run("search-points --level 85 --height 20");
  CHECK(r.code == 0);
  CHECK(r.out.find("provably complete") != std::string::npos);
  CHECK(run("search-points --equation \"1 0 0 0 0 0 1\" --height 5").code == 0);
  CHECK(run("search-points --equation \"2 0 0 0 0 0 1\"").code == 3);
  CHECK(run("search-points").code == 3);
  CHECK(run("validate-all").code == 0);
  CHECK(run("--data-dir /nonexistent validate-all").code != 0);
}

TEST_CASE("precision cap from the environment") {
  CHECK(run("identify-cm --minpoly \"1 -54000\"").code == 0);
  ::setenv("QSTAR_PRECISION_CAP", "zero", 1);
  CHECK(run("identify-cm --minpoly \"1 -54000\"").code == 3);
  ::unsetenv("QSTAR_PRECISION_CAP");
}
