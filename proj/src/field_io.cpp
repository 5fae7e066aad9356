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

#include "sslab/field_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sslab {

void write_field(const DiscreteField& f, const std::string& base) {
  nlohmann::ordered_json manifest;
  manifest["m"] = f.params().m;
  manifest["n"] = f.params().n;
  manifest["U"] = f.grid().U;
  manifest["Nu"] = f.grid().Nu;
  manifest["Nv"] = f.grid().Nv;
  manifest["Lmax"] = f.grid().Lmax;
  manifest["coord"] = (f.coord() == Coord::Log) ? "log" : "phys";
  std::vector<int> populated;
  for (int l = 0; l < f.num_sectors(); ++l)
    if (f.has_sector(l)) populated.push_back(l);
  manifest["sectors"] = populated;
  {
    std::ofstream out(base + ".json");
    if (!out) throw Error("write_field: cannot open " + base + ".json");
    out << manifest.dump(2) << "\n";
  }
  for (int l : populated) {
    std::ofstream out(base + "_sector" + std::to_string(l) + ".csv");
    if (!out) throw Error("write_field: cannot open sector file");
    const auto& s = f.sector(l);
    for (int i = 0; i < s.rows(); ++i) {
      for (int q = 0; q < s.cols(); ++q) {
        if (q) out << ' ';
        out << format17(s(i, q).real()) << ',' << format17(s(i, q).imag());
      }
      out << '\n';
    }
  }
}

DiscreteField read_field(const std::string& base) {
  std::ifstream in(base + ".json");
  if (!in) throw Error("read_field: cannot open " + base + ".json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  Params p = make_params(manifest.at("m").get<double>(), manifest.at("n").get<int>());
  GridSpec g;
  g.U = manifest.at("U").get<double>();
  g.Nu = manifest.at("Nu").get<int>();
  g.Nv = manifest.at("Nv").get<int>();
  g.Lmax = manifest.at("Lmax").get<int>();
  validate_grid(g);
  const Coord coord = manifest.at("coord").get<std::string>() == "log" ? Coord::Log : Coord::Phys;
  DiscreteField f(p, g, coord);
  for (int l : manifest.at("sectors").get<std::vector<int>>()) {
    std::ifstream cs(base + "_sector" + std::to_string(l) + ".csv");
    if (!cs) throw Error("read_field: missing sector file for l=" + std::to_string(l));
    Eigen::MatrixXcd s(g.Nu, g.Nv);
    std::string line;
    for (int i = 0; i < g.Nu; ++i) {
      if (!std::getline(cs, line)) throw Error("read_field: truncated sector file");
      std::istringstream row(line);
      std::string cell;
      for (int q = 0; q < g.Nv; ++q) {
        if (!(row >> cell)) throw Error("read_field: truncated row");
        const auto comma = cell.find(',');
        if (comma == std::string::npos) throw Error("read_field: bad cell " + cell);
        s(i, q) = Complex(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
      }
    }
    f.sector(l) = s;
  }
  return f;
}

}  // namespace sslab
