// Copyright 2026 The proctensor Authors
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

#include <bit>
#include <cstring>
#include <fstream>

#include "json.hpp"
#include "proctensor/error.hpp"
#include "proctensor/process.hpp"

namespace proctensor::process {

static_assert(std::endian::native == std::endian::little,
              "Choi serialization assumes a little-endian host");

void write_choi(const std::filesystem::path& path, const ChoiState& c,
                const std::optional<haar::SeedSpec>& seed) {
  nlohmann::json header{{"format", "proctensor-choi/1"},
                        {"k", c.k},
                        {"d_s", c.d_s},
                        {"d_e", c.d_e},
                        {"dim", c.dim()},
                        {"layout", c.layout.labels()},
                        {"dtype", "complex128-le"}};
  if (seed) {
    header["seed"] = {{"master_seed", seed->master_seed},
                      {"stream_index", seed->stream_index}};
  } else {
    header["seed"] = nullptr;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << header.dump() << '\n';
  // Row-major storage already interleaves (re, im) per entry.
  out.write(reinterpret_cast<const char*>(c.matrix.data()),
            static_cast<std::streamsize>(c.matrix.size() * sizeof(linalg::Complex)));
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ChoiState read_choi(const std::filesystem::path& path, ChoiHeader* header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("missing header in '" + path.string() + "'");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad header in '" + path.string() + "': " + e.what());
  }
  ChoiHeader hd;
  try {
    hd.k = h.at("k").get<std::size_t>();
    hd.d_s = h.at("d_s").get<std::size_t>();
    hd.d_e = h.at("d_e").get<std::size_t>();
    hd.layout = h.at("layout").get<std::vector<std::string>>();
    if (h.contains("seed") && !h["seed"].is_null()) {
      hd.seed = haar::SeedSpec{h["seed"].at("master_seed").get<std::uint64_t>(),
                               h["seed"].at("stream_index").get<std::uint64_t>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad header in '" + path.string() + "': " + e.what());
  }
  if (hd.layout != choi_layout(hd.k, hd.d_s).labels()) {
    throw IoError("non-canonical layout in '" + path.string() + "'");
  }
  ProcessSpec probe;
  probe.k = hd.k;
  probe.d_s = hd.d_s;
  const auto n = static_cast<Eigen::Index>(probe.choi_dim());
  ComplexMatrix m(n, n);
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(m.size() * sizeof(linalg::Complex)));
  if (in.gcount() != static_cast<std::streamsize>(m.size() * sizeof(linalg::Complex))) {
    throw IoError("truncated payload in '" + path.string() + "'");
  }
  if (header) *header = hd;
  return ChoiState(std::move(m), hd.k, hd.d_s, hd.d_e);
}

}  // namespace proctensor::process
