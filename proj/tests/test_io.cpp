//------------------------------------------------------------------------------
//
//   Copyright 2026 The fdyn Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "fdyn/io.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>

using namespace fdyn;
using namespace fdyn::testing;

namespace {

bool same_objects(ObjectTrajectorySample const &a, ObjectTrajectorySample const &b)
{
  if (a.size() != b.size() || a.grid().points() != b.grid().points() || a.tag().kind != b.tag().kind)
  {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (a.subjects()[i].id != b.subjects()[i].id || a.subjects()[i].group != b.subjects()[i].group)
    {
      return false;
    }
    for (std::size_t k = 0; k < a.grid().size(); ++k)
    {
      if (!(a.at(i, k) == b.at(i, k)))
      {
        return false;
      }
    }
  }
  return true;
}

ObjectTrajectorySample mixed_sample(Rng &rng, SpaceKind kind, bool labeled)
{
  auto const                     grid  = TimeGrid({0.0, 0.3, 0.31, 1.0});
  auto const                     probs = ProbabilityGrid::midpoints(7);
  std::vector<SubjectTrajectory> subjects(3);
  for (std::size_t i = 0; i < 3; ++i)
  {
    subjects[i].id    = "subj-" + std::to_string(i);
    subjects[i].group = labeled ? (i == 1 ? "b" : "a") : "";
    for (std::size_t k = 0; k < grid.size(); ++k)
    {
      switch (kind)
      {
      case SpaceKind::network:
        subjects[i].objects.emplace_back(random_laplacian(rng, 4, 1.0 / 3.0));
        break;
      case SpaceKind::distribution:
        subjects[i].objects.emplace_back(random_quantile(rng, probs));
        break;
      case SpaceKind::shape:
        subjects[i].objects.emplace_back(random_shape(rng, 5));
        break;
      }
    }
  }
  return ObjectTrajectorySample(ObjectSpaceTag{kind}, grid, std::move(subjects));
}

std::string sample_with_payload(std::string const &payload)
{
  return R"({"format":"fdyn.sample","version":1,"space":"network","metric":"frobenius",)"
         R"("grid":[0,1],"subjects":[{"id":"alice","objects":[[1,0],[1,0]]},)"
         R"({"id":"bob","objects":[[1,0],)" +
         payload + "]}]}";
}

}  // namespace

TEST_CASE("double formatting round-trips exactly")
{
  Rng rng(51);
  for (int k = 0; k < 2000; ++k)
  {
    double const x = gaussian(rng) * std::pow(10.0, uniform(rng, -300.0, 300.0));
    CHECK(parse_double(format_double(x), "x") == x);
  }
  for (double x : {0.0, -0.0, 1.0 / 3.0, std::numeric_limits<double>::denorm_min(),
                   std::numeric_limits<double>::max(), 0.1})
  {
    CHECK(parse_double(format_double(x), "x") == x);
  }
  CHECK(std::isnan(parse_double(format_double(std::nan("")), "x")));
  CHECK(parse_double(" +2.5 ", "x") == 2.5);
  CHECK_THROWS_AS(parse_double("1,5", "ctx"), ParseError);
  CHECK_THROWS_AS(parse_double("", "ctx"), ParseError);

  // Output ignores the process locale.
  char const *old = std::setlocale(LC_NUMERIC, nullptr);
  std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr)
  {
    CHECK(format_double(0.5) == "0.5");
    CHECK(parse_double("0.25", "x") == 0.25);
  }
  std::setlocale(LC_NUMERIC, saved.c_str());
  CHECK(format_double(0.5).find(',') == std::string::npos);
}

TEST_CASE("sample manifests round-trip bit-exactly")
{
  Rng        rng(52);
  auto const dir = scratch_dir("io_sample");
  for (auto kind : {SpaceKind::network, SpaceKind::distribution, SpaceKind::shape})
  {
    for (bool labeled : {false, true})
    {
      auto const s    = mixed_sample(rng, kind, labeled);
      auto const back = sample_from_json(sample_to_json(s));
      CHECK(same_objects(s, back));
      CHECK(back.has_groups() == labeled);

      auto const path = dir / "s.json";
      write_sample(s, path);
      CHECK(same_objects(s, load_sample(path)));
      CHECK(sample_to_json(load_sample(path)) == sample_to_json(s));
    }
  }
}

TEST_CASE("mean and variance files round-trip")
{
  Rng        rng(53);
  auto const s = mixed_sample(rng, SpaceKind::shape, true);
  auto const m = frechet_mean_trajectory(s);
  auto const mb = mean_from_json(mean_to_json(m));
  CHECK(mb.provenance == m.provenance);
  for (std::size_t k = 0; k < m.objects.size(); ++k)
  {
    CHECK(mb.objects[k] == m.objects[k]);
  }
  auto const oracle = make_oracle_mean(s.tag(), s.grid(), m.objects);
  CHECK(mean_from_json(mean_to_json(oracle)).provenance == MeanProvenance::supplied_oracle);

  auto const v  = variance_trajectories(s, m);
  auto const text = variance_to_csv(v);
  auto const vb = variance_from_csv(text);
  CHECK(vb.values == v.values);
  CHECK(vb.ids == v.ids);
  CHECK(vb.groups == v.groups);
  CHECK(vb.grid.points() == v.grid.points());
  CHECK(variance_to_csv(vb) == text);

  auto const table = parse_csv(text);
  CHECK(table.header.size() == 2 + s.grid().size());
  CHECK(table.header[1] == "group");
  CHECK(table.rows.size() == 3);

  CHECK_THROWS_AS(variance_from_csv("id,0,1\na,1,2\n"), ParseError);
  CHECK_THROWS_AS(variance_from_csv("subject_id,0,1\na,1\n"), ParseError);
  CHECK_THROWS_AS(variance_from_csv(""), ParseError);
  CHECK_THROWS_AS(variance_from_csv("subject_id,0,1\na,1,x\n"), ParseError);
}

TEST_CASE("malformed manifests name the offending subject")
{
  CHECK_NOTHROW(sample_from_json(sample_with_payload("[1,0]")));
  try
  {
    (void)sample_from_json(sample_with_payload("[2,0,0]"));
    FAIL("expected a parse error");
  }
  catch (ParseError const &e)
  {
    std::string const msg = e.what();
    CHECK(msg.find("bob") != std::string::npos);
    CHECK(msg.find('5') != std::string::npos);  // 1 + r^2 entries expected
  }

  std::string const dist =
      R"({"format":"fdyn.sample","version":1,"space":"distribution","metric":"wasserstein2",)"
      R"("grid":[0,1],"prob_grid":[0.25,0.5,0.75],)"
      R"("subjects":[{"id":"carol","objects":[[0,1,2],[0,2,1]]}]})";
  try
  {
    (void)sample_from_json(dist);
    FAIL("expected an invariant error");
  }
  catch (Error const &e)
  {
    std::string const msg = e.what();
    CHECK(msg.find("nondecreasing") != std::string::npos);
    CHECK(msg.find("carol") != std::string::npos);
  }

  CHECK_THROWS_AS(sample_from_json("{not json"), ParseError);
  CHECK_THROWS_AS(sample_from_json(R"({"format":"other","version":1})"), ParseError);
  CHECK_THROWS_AS(load_sample("/nonexistent/fdyn/sample.json"), IoError);
}

TEST_CASE("tabular outputs")
{
  auto const grid = TimeGrid::uniform(6);
  Rng        rng(54);
  Matrix     values(8, 6);
  for (auto &x : values.data())
  {
    x = uniform(rng, 0.0, 2.0);
  }
  std::vector<std::string> ids, groups;
  for (int i = 0; i < 8; ++i)
  {
    ids.push_back("id" + std::to_string(i));
    groups.push_back(i % 2 == 0 ? "x" : "y");
  }
  VarianceMatrix const v(grid, values, false, ids, groups);
  auto const           fpca = run_fpca(v, ComponentSelection{2, 0.95});

  auto const nu = parse_csv(nu_hat_to_csv(grid, fpca.nu_hat));
  CHECK(nu.header == std::vector<std::string>{"t", "nu_hat"});
  CHECK(nu.rows.size() == 6);

  auto const cov = parse_csv(covariance_to_csv(fpca.surface));
  CHECK(cov.rows.size() + 1 == 6);  // headerless: first line lands in header
  CHECK(cov.header.size() == 6);

  auto const eig = parse_csv(eigen_to_csv(fpca));
  CHECK(eig.header == std::vector<std::string>{"component", "eigenvalue", "eigengap", "fve"});
  CHECK(eig.rows.size() == 2);

  auto const ef = parse_csv(eigenfunctions_to_csv(grid, fpca.eigenfunctions));
  CHECK(ef.header == std::vector<std::string>{"t", "phi_1", "phi_2"});
  CHECK(ef.rows.size() == 6);

  auto const sc = parse_csv(scores_to_csv(fpca.scores, ids, groups));
  CHECK(sc.header == std::vector<std::string>{"subject_id", "group", "B_1", "B_2"});
  REQUIRE(sc.rows.size() == 8);
  for (std::size_t i = 0; i < 8; ++i)
  {
    CHECK(parse_double(sc.rows[i][2], "s") == fpca.scores(i, 0));
  }

  auto const svg = scores_scatter_svg(fpca.scores, groups);
  std::size_t circles = 0;
  for (auto pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1))
  {
    ++circles;
  }
  CHECK(circles == 8);
  CHECK(svg.rfind("<svg", 0) == 0);
}

TEST_CASE("dynamics CSV keeps undefined points")
{
  DynamicsResult d{TimeGrid::uniform(3),
                   {0.5, std::nan(""), -1.25},
                   {0.25, std::nan(""), 1.0},
                   {0.125, std::nan(""), 0.0},
                   {Regime::centrifugal, Regime::undefined, Regime::centripetal},
                   0.1};
  auto const text = dynamics_to_csv(d);
  CHECK(text.find("nan") != std::string::npos);
  auto const back = dynamics_from_csv(text);
  CHECK(back.beta[0] == 0.5);
  CHECK(std::isnan(back.beta[1]));
  CHECK(std::isnan(back.r_squared[1]));
  CHECK(back.regime == d.regime);
  CHECK(dynamics_to_csv(back) == text);
  CHECK_THROWS_AS(dynamics_from_csv("t,beta\n0,1\n"), ParseError);
}
