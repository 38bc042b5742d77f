#include "hetpca/dataset_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace hetpca {

namespace {

constexpr char kMagic[4] = {'H', 'P', 'C', 'A'};
constexpr std::uint8_t kVersion = 1;

void put_u64_le(std::uint8_t* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(v >> (8 * i));
}

std::uint64_t get_u64_le(const std::uint8_t* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  return v;
}

nlohmann::json spec_to_json(const DatasetSpec& spec) {
  return nlohmann::json{{"n", spec.n},
                        {"d", spec.d},
                        {"amplitudes", spec.amplitudes},
                        {"variances", spec.noise.variances()},
                        {"proportions", spec.noise.proportions()},
                        {"field", to_string(spec.field)},
                        {"coeff_dist", to_string(spec.coeff_dist)},
                        {"assignment", to_string(spec.assignment)},
                        {"seed", spec.seed}};
}

template <typename Scalar>
void write_file(const Dataset<Scalar>& ds, const std::string& path, std::uint8_t tag) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  std::array<std::uint8_t, 32> header{};
  std::memcpy(header.data(), kMagic, 4);
  header[4] = kVersion;
  header[5] = tag;
  put_u64_le(header.data() + 8, static_cast<std::uint64_t>(ds.spec.n));
  put_u64_le(header.data() + 16, static_cast<std::uint64_t>(ds.spec.d));
  put_u64_le(header.data() + 24, static_cast<std::uint64_t>(ds.spec.rank()));
  out.write(reinterpret_cast<const char*>(header.data()), header.size());

  // column-major doubles; complex interleaves re, im
  out.write(reinterpret_cast<const char*>(ds.Y.data()),
            static_cast<std::streamsize>(sizeof(Scalar)) * ds.Y.size());
  if (!out) throw std::runtime_error("write failed: " + path);
  out.close();

  std::ofstream side(path + ".json");
  if (!side) throw std::runtime_error("cannot open for writing: " + path + ".json");
  side << spec_to_json(ds.spec).dump(2) << "\n";
}

}  // namespace

void export_dataset(const Dataset<double>& ds, const std::string& path) {
  write_file(ds, path, 0);
}

void export_dataset(const Dataset<std::complex<double>>& ds, const std::string& path) {
  write_file(ds, path, 1);
}

ExportedDataset read_exported_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::array<std::uint8_t, 32> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (!in || std::memcmp(header.data(), kMagic, 4) != 0) {
    throw std::runtime_error("not a dataset file: " + path);
  }
  ExportedDataset out;
  out.version = header[4];
  out.field = header[5] == 0 ? Field::Real : Field::Complex;
  out.n = static_cast<std::int64_t>(get_u64_le(header.data() + 8));
  out.d = static_cast<std::int64_t>(get_u64_le(header.data() + 16));
  out.k = static_cast<std::int64_t>(get_u64_le(header.data() + 24));
  if (out.n < 0 || out.d < 0) throw std::runtime_error("corrupt dataset header");

  out.samples.resize(out.d, out.n);
  if (out.field == Field::Real) {
    Eigen::MatrixXd tmp(out.d, out.n);
    in.read(reinterpret_cast<char*>(tmp.data()),
            static_cast<std::streamsize>(sizeof(double)) * tmp.size());
    if (!in) throw std::runtime_error("truncated dataset file: " + path);
    out.samples = tmp.cast<std::complex<double>>();
  } else {
    in.read(reinterpret_cast<char*>(out.samples.data()),
            static_cast<std::streamsize>(sizeof(std::complex<double>)) *
                out.samples.size());
    if (!in) throw std::runtime_error("truncated dataset file: " + path);
  }
  return out;
}

}  // namespace hetpca
