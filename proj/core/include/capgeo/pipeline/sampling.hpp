#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "capgeo/errors.hpp"

namespace capgeo::pipeline {

// Uniform draw in [0, bound) by rejection sampling, so subset draws do not
// depend on the standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Indices of a uniform without-replacement sample of size n from [0, total),
// in ascending order. Deterministic for a given seed.
std::vector<std::size_t> sample_indices(std::size_t total, std::size_t n, std::uint64_t seed);

template <typename T>
std::vector<T> sample_subset(const std::vector<T>& records, std::size_t n, std::uint64_t seed) {
  if (n > records.size()) {
    throw DataError("sample size " + std::to_string(n) + " exceeds record count " +
                    std::to_string(records.size()));
  }
  std::vector<T> out;
  out.reserve(n);
  for (const std::size_t i : sample_indices(records.size(), n, seed)) {
    out.push_back(records[i]);
  }
  return out;
}

}  // namespace capgeo::pipeline
