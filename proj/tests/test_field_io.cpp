// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "sslab/field_io.hpp"

using namespace sslab;

TEST_CASE("field files round-trip exactly") {
  const Params p = make_params(1.5, 3);
  GridSpec g;
  g.U = 20.0;
  g.Nu = 32;
  g.Nv = 6;
  g.Lmax = 2;
  DiscreteField f(p, g, Coord::Log);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss;
  for (int l : {0, 2}) {
    Eigen::MatrixXcd s(g.Nu, g.Nv);
    for (int i = 0; i < g.Nu; ++i)
      for (int q = 0; q < g.Nv; ++q) s(i, q) = Complex(gauss(rng), gauss(rng) * 1e-17);
    f.sector(l) = s;
  }

  const std::string base = "/tmp/sslab_io_test";
  write_field(f, base);
  const DiscreteField r = read_field(base);

  CHECK(r.coord() == Coord::Log);
  CHECK(r.grid() == f.grid());
  CHECK(r.params().m == f.params().m);
  CHECK(r.has_sector(0));
  CHECK(!r.has_sector(1));
  CHECK(r.has_sector(2));
  for (int l : {0, 2}) {
    bool exact = true;
    for (int i = 0; i < g.Nu; ++i)
      for (int q = 0; q < g.Nv; ++q)
        if (r.sector(l)(i, q) != f.sector(l)(i, q)) exact = false;
    CHECK(exact);  // bit-exact at 17 significant digits
  }
  std::remove((base + ".json").c_str());
  std::remove((base + "_sector0.csv").c_str());
  std::remove((base + "_sector2.csv").c_str());
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS((void)read_field("/tmp/definitely_missing_sslab_field"), Error);
}
