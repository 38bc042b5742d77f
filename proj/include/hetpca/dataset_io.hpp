#pragma once

#include <string>

#include "hetpca/datagen.hpp"

namespace hetpca {

/// Binary layout: 32-byte header, then the samples matrix Y column-major as
/// IEEE doubles (complex entries interleaved re, im). Header bytes:
///   0..3   magic "HPCA"
///   4      format version (1)
///   5      field tag (0 real, 1 complex)
///   6..7   zero padding
///   8..31  n, d, k as little-endian uint64
/// A JSON sidecar at <path>.json records the generating spec.
void export_dataset(const Dataset<double>& ds, const std::string& path);
void export_dataset(const Dataset<std::complex<double>>& ds, const std::string& path);

struct ExportedDataset {
  int version = 0;
  Field field = Field::Real;
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;
  Eigen::MatrixXcd samples;  // real data promoted to complex with zero imag
};

ExportedDataset read_exported_dataset(const std::string& path);

}  // namespace hetpca
