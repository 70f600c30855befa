#include "scthresh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace scthresh {

namespace {

// Positions hold exact multiples of 0.5, so (x, y) keys are safe to compare.
using PosKey = std::pair<double, double>;

}  // namespace

CodeLayout build_layout(int distance) {
  if (distance < 1) {
    throw std::invalid_argument("build_layout: distance must be >= 1, got " +
                                std::to_string(distance));
  }
  const int d = distance;

  CodeLayout layout;
  layout.distance = d;

  // Vertical links at (i, j+1/2), horizontal links at (i+1/2, j).
  std::vector<Qubit> qubits;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      qubits.push_back({-1, static_cast<double>(i), j + 0.5, Orientation::Vertical});
    }
  }
  for (int j = 1; j < d; ++j) {
    for (int i = 0; i + 1 < d; ++i) {
      qubits.push_back({-1, i + 0.5, static_cast<double>(j), Orientation::Horizontal});
    }
  }

  // Row-major id assignment: sort by (y, x), then number 0..N-1.
  std::sort(qubits.begin(), qubits.end(), [](const Qubit& a, const Qubit& b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  std::map<PosKey, int> id_at;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    qubits[k].id = static_cast<int>(k);
    id_at[{qubits[k].x, qubits[k].y}] = static_cast<int>(k);
  }
  layout.qubits = std::move(qubits);

  auto lookup = [&id_at](double x, double y) -> int {
    auto it = id_at.find({x, y});
    return it == id_at.end() ? -1 : it->second;
  };
  auto collect = [&lookup](std::initializer_list<PosKey> positions) {
    std::vector<int> ids;
    for (const auto& [x, y] : positions) {
      if (int q = lookup(x, y); q >= 0) ids.push_back(q);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  // Stars live on interior vertices (i, j), j = 1..d-1; the left/right
  // columns miss one horizontal link and drop to weight 3.
  for (int j = 1; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      const double x = i, y = j;
      layout.stars.push_back(collect({{x, y - 0.5}, {x, y + 0.5}, {x - 0.5, y}, {x + 0.5, y}}));
    }
  }

  // Plaquettes live on faces (i+1/2, j+1/2); the top/bottom rows miss one
  // horizontal link (rough boundary) and drop to weight 3.
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i + 1 < d; ++i) {
      const double x = i + 0.5, y = j + 0.5;
      layout.plaquettes.push_back(
          collect({{x - 0.5, y}, {x + 0.5, y}, {x, y - 0.5}, {x, y + 0.5}}));
    }
  }

  // Logical-z support: the leftmost straight vertical path, rough to rough.
  // Logical-x support: the straight horizontal dual path through the bottom
  // face row, cutting one vertical link per column.
  for (int j = 0; j < d; ++j) layout.logical_z.push_back(lookup(0.0, j + 0.5));
  for (int i = 0; i < d; ++i) layout.logical_x.push_back(lookup(static_cast<double>(i), 0.5));
  std::sort(layout.logical_z.begin(), layout.logical_z.end());
  std::sort(layout.logical_x.begin(), layout.logical_x.end());

  return layout;
}

SectorConfig spin_config(const CodeLayout& layout, std::uint64_t subset, Sector sector) {
  const int p = layout.num_plaquettes();
  if (p < 64 && (subset >> p) != 0) {
    throw std::invalid_argument("spin_config: subset references plaquettes beyond index " +
                                std::to_string(p - 1));
  }

  SectorConfig config;
  config.subset = subset;
  config.sector = sector;
  config.spins.assign(layout.qubits.size(), +1);

  for (int b = 0; b < p; ++b) {
    if ((subset >> b) & 1u) {
      for (int q : layout.plaquettes[b]) config.spins[q] = -config.spins[q];
    }
  }
  if (sector == Sector::Minus) {
    for (int q : layout.logical_z) config.spins[q] = -config.spins[q];
  }
  return config;
}

Parity overlap_parity(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> sa = a;
  std::vector<int> sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::size_t i = 0, j = 0, overlap = 0;
  while (i < sa.size() && j < sb.size()) {
    if (sa[i] < sb[j]) {
      ++i;
    } else if (sb[j] < sa[i]) {
      ++j;
    } else {
      ++overlap;
      ++i;
      ++j;
    }
  }
  return (overlap % 2 == 0) ? Parity::Even : Parity::Odd;
}

}  // namespace scthresh
