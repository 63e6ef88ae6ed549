#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mmwt/config.hpp"
#include "mmwt/errors.hpp"

using namespace mmwt;

TEST(Config, ParsesSectionsAndUnits) {
  const auto p = parse_params(R"(
# sparse network
[network]
lambda_m = 1e-5
ell_w_db = -20     ; two walls' worth
[path_loss]
beta = 0.006
c_los_db = -60
[fading]
nakagami_m = 3
)");
  EXPECT_DOUBLE_EQ(p.lambda_m, 1e-5);
  EXPECT_NEAR(p.ell_w, 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(p.path_loss.beta, 0.006);
  EXPECT_NEAR(p.path_loss.c_los, 1e-6, 1e-18);
  EXPECT_EQ(p.fading.nakagami_m, 3);
  EXPECT_DOUBLE_EQ(p.p_m, NetworkParams{}.p_m);
}

TEST(Config, ErrorsCarryLineNumbers) {
  try {
    parse_params("[network]\nlambda_m = 1e-5\nwhatever = 3\n");
    FAIL() << "unknown key accepted";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(parse_params("[network]\nlambda_m = x\n"), ConfigError);
  EXPECT_THROW(parse_params("[nosuch]\nlambda_m = 1\n"), ConfigError);
  EXPECT_THROW(parse_params("lambda_m 1\n"), ConfigError);
}

TEST(Config, OverridesUseQualifiedKeys) {
  NetworkParams p;
  apply_override(p, "network.lambda_f=4e-4");
  apply_override(p, "vertical.enabled=0");
  EXPECT_DOUBLE_EQ(p.lambda_f, 4e-4);
  EXPECT_FALSE(p.vertical_pattern);
  EXPECT_THROW(apply_override(p, "network.bogus=1"), ConfigError);
  EXPECT_THROW(apply_override(p, "lambda_f"), ConfigError);
}

TEST(Config, CanonicalTextRoundTrips) {
  NetworkParams p;
  p.lambda_m = 3.3e-4;
  p.sigma2 = 1.234e-12;
  p.path_loss.alpha_los = 2.1;
  p.femto_rx.beamwidth_deg = 45;
  const auto q = parse_params(to_config_text(p));
  EXPECT_EQ(to_config_text(q), to_config_text(p));
  EXPECT_EQ(config_hash(q), config_hash(p));
  EXPECT_EQ(config_hash(p).size(), 16u);
  q.validate();
}

TEST(Config, HashTracksEveryKey) {
  const NetworkParams base;
  const std::string h0 = config_hash(base);
  for (const auto& key : config_keys()) {
    NetworkParams p = base;
    // Pick a value that is valid for every key and differs from the default.
    const std::string value = key == "vertical.enabled" ? "0" : key == "fading.nakagami_m" ? "2" : "0.5";
    apply_override(p, key + "=" + value);
    EXPECT_NE(config_hash(p), h0) << key;
  }
}

TEST(Config, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ull);
}

TEST(Config, LoadsFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "mmwt_config_test.cfg";
  {
    std::ofstream out(path);
    out << "[power]\np_m = 40\n";
  }
  EXPECT_DOUBLE_EQ(load_params(path).p_m, 40.0);
  std::filesystem::remove(path);
  EXPECT_THROW(load_params(path), ConfigError);
}
