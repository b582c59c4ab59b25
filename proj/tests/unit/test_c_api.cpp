// Copyright 2026 The mpf-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <thread>

#include "mpf/mpf_lab.h"

namespace {

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(mpf_version(), "0.1.0");
  EXPECT_STREQ(mpf_status_name(MPF_OK), "ok");
  EXPECT_STRNE(mpf_status_name(MPF_ERR_CAPACITY), mpf_status_name(MPF_ERR_BUDGET));
}

TEST(CApi, WeightsRoundTrip) {
  const uint64_t k[] = {1, 2, 7};
  mpf_weights* w = nullptr;
  ASSERT_EQ(mpf_weights_solve(k, 3, "s1", -1, &w), MPF_OK);
  EXPECT_EQ(mpf_weights_size(w), 3u);
  EXPECT_STREQ(mpf_weights_exact(w, 0), "1/6");
  EXPECT_STREQ(mpf_weights_exact(w, 1), "-4/5");
  EXPECT_STREQ(mpf_weights_exact(w, 2), "49/30");
  EXPECT_EQ(mpf_weights_exact(w, 3), nullptr);
  double v = 0;
  ASSERT_EQ(mpf_weights_value(w, 2, &v), MPF_OK);
  EXPECT_NEAR(v, 49.0 / 30.0, 1e-15);
  EXPECT_EQ(mpf_weights_value(w, 3, &v), MPF_ERR_INVALID_INPUT);
  ASSERT_EQ(mpf_weights_norm1(w, &v), MPF_OK);
  EXPECT_NEAR(v, 78.0 / 30.0, 1e-15);
  EXPECT_NE(std::string(mpf_weights_json(w)).find("49/30"), std::string::npos);
  mpf_weights_free(w);
}

TEST(CApi, ErrorsSetThreadLocalMessage) {
  const uint64_t k[] = {2, 2};
  mpf_weights* w = nullptr;
  EXPECT_EQ(mpf_weights_solve(k, 2, "s1", -1, &w), MPF_ERR_INVALID_INPUT);
  EXPECT_EQ(w, nullptr);
  const std::string msg = mpf_last_error();
  EXPECT_FALSE(msg.empty());
  std::string other = "unset";
  std::thread([&] { other = mpf_last_error(); }).join();
  EXPECT_EQ(other, "");
  EXPECT_EQ(mpf_weights_solve(nullptr, 2, "s1", -1, &w), MPF_ERR_NULL_POINTER);
  EXPECT_EQ(mpf_weights_solve(k, 2, "s1", -1, nullptr), MPF_ERR_NULL_POINTER);
  mpf_weights_free(nullptr);
}

TEST(CApi, Search) {
  mpf_search_result* r = nullptr;
  ASSERT_EQ(mpf_search(2, "s1", 1, 5, 3.0, "min-norm1", 1, &r), MPF_OK);
  ASSERT_GT(mpf_search_count(r), 0u);
  uint64_t k[2];
  size_t l = 0;
  ASSERT_EQ(mpf_search_sequence(r, 0, k, 2, &l), MPF_OK);
  EXPECT_EQ(l, 2u);
  EXPECT_EQ(k[0], 1u);
  EXPECT_EQ(k[1], 5u);
  EXPECT_EQ(mpf_search_sequence(r, 0, k, 1, &l), MPF_ERR_CAPACITY);
  double n1 = 0;
  ASSERT_EQ(mpf_search_norm1(r, 0, &n1), MPF_OK);
  EXPECT_DOUBLE_EQ(n1, 1.5);
  mpf_search_free(r);
}

TEST(CApi, HamiltonianAndEvolution) {
  mpf_hamiltonian* h = nullptr;
  ASSERT_EQ(mpf_hamiltonian_ising(3, 0.5, 1.0, &h), MPF_OK);
  EXPECT_EQ(mpf_hamiltonian_dim(h), 8u);
  double exact = 0;
  double approx = 0;
  ASSERT_EQ(mpf_z0_expectation(h, 0.5, 0, "s2", "zeros", &exact), MPF_OK);
  ASSERT_EQ(mpf_z0_expectation(h, 0.5, 64, "s2", "zeros", &approx), MPF_OK);
  EXPECT_NEAR(exact, approx, 1e-4);
  double err = 0;
  ASSERT_EQ(mpf_pf_operator_error(h, 0.5, 4, "s1", &err), MPF_OK);
  EXPECT_GT(err, 0.0);
  uint64_t kk = 0;
  uint64_t reps = 0;
  ASSERT_EQ(mpf_pf_repetitions(h, 0.5, "s2", 1e-3, "operator-norm", &kk, &reps), MPF_OK);
  EXPECT_GE(kk, 1u);
  EXPECT_EQ(mpf_z0_expectation(h, 0.5, 1, "s3", "zeros", &approx), MPF_ERR_INVALID_INPUT);
  mpf_hamiltonian_free(h);
  EXPECT_EQ(mpf_hamiltonian_ising(13, 0.5, 1.0, &h), MPF_ERR_CAPACITY);
}

TEST(CApi, ResourcesAndFit) {
  const uint64_t k[] = {1, 2, 7};
  uint64_t n = 0;
  ASSERT_EQ(mpf_lcu_cnot_count(k, 3, 5, &n), MPF_OK);
  EXPECT_EQ(n, 608u);
  ASSERT_EQ(mpf_classical_cnot_count(k, 3, 5, &n), MPF_OK);
  EXPECT_EQ(n, 28u);
  EXPECT_EQ(mpf_lcu_cnot_count(k, 2, 5, &n), MPF_ERR_UNSUPPORTED);
  size_t l = 0;
  uint64_t kd = 0;
  ASSERT_EQ(mpf_depth_scaling(11, 1e-4, 10, &l, nullptr, &kd), MPF_OK);
  EXPECT_EQ(l, 4u);
  EXPECT_EQ(kd, 160u);
  double c[6];
  double y[6];
  for (int i = 0; i < 6; ++i) {
    c[i] = 1.0 + 0.4 * i;
    y[i] = -0.5 * std::exp(-0.3 * c[i]) + 0.1;
  }
  double e0 = 0;
  ASSERT_EQ(mpf_zne_fit(c, y, 6, nullptr, nullptr, nullptr, &e0), MPF_OK);
  EXPECT_NEAR(e0, -0.4, 1e-6);
}

TEST(CApi, ExperimentOverridesWin) {
  mpf_report* r = nullptr;
  ASSERT_EQ(mpf_run_experiment("lcu-cost", "k=1,2,3\n", "k=1,2,7\n", &r), MPF_OK);
  const std::string csv = mpf_report_csv(r);
  EXPECT_NE(csv.find("k=1,2,7"), std::string::npos);
  EXPECT_NE(csv.find("608"), std::string::npos);
  EXPECT_NE(std::string(mpf_report_json(r)).find("\"experiment\""), std::string::npos);
  mpf_report_free(r);
  EXPECT_EQ(mpf_run_experiment("lcu-cost", "nonsense=1\n", nullptr, &r), MPF_ERR_INVALID_INPUT);
  EXPECT_EQ(mpf_run_experiment(nullptr, nullptr, nullptr, &r), MPF_ERR_NULL_POINTER);
}

}  // namespace
