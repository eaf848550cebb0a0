// lrs: command-line front end for ring keygen, signing, verification, the
// harness self-test and the scaling benchmark.
//
// Exit codes: 0 success / accept, 1 signature rejected, 2 malformed input,
// 64 usage error, 66 I/O error.

#include "lrs/bench.hpp"
#include "lrs/harness.hpp"
#include "lrs/wire.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

constexpr int kExitReject = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 66;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

lrs::Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(fmt::format("cannot open {}", path));
  }
  lrs::Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError(fmt::format("cannot read {}", path));
  }
  return data;
}

void write_file(const std::string& path, const lrs::Bytes& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw IoError(fmt::format("cannot write {}", path));
  }
}

lrs::ParameterSet load_preset(const std::string& name) {
  try {
    return lrs::preset(name);
  } catch (const lrs::ParameterError& e) {
    throw UsageError(e.what());
  }
}

void warn_if_insecure(const std::string& name) {
  if (name != "paper") {
    std::cerr << "note: preset '" << name << "' is for testing only and offers no security\n";
  }
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad ring size '{}'", item));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice ring signatures"};
  app.require_subcommand(1);

  std::string preset_name = "desk";
  std::uint64_t seed = 0;
  std::size_t ring_size = 4;
  std::string out_path, ring_path, key_path, msg_path, sig_path, json_path;
  std::size_t index = 0;
  std::string sizes_text = "1,2,4,8";
  std::size_t reps = 50;

  auto* params_cmd = app.add_subcommand("params", "Print the canonical parameter block");
  params_cmd->add_option("--preset", preset_name, "toy, desk or paper")->required();

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a ring and one secret key per member");
  keygen_cmd->add_option("--preset", preset_name)->required();
  keygen_cmd->add_option("--ring-size", ring_size)->required()->check(CLI::PositiveNumber);
  keygen_cmd->add_option("--seed", seed)->required();
  keygen_cmd->add_option("--out", out_path, "Output directory")->required();

  auto* sign_cmd = app.add_subcommand("sign", "Sign a message file as one ring member");
  sign_cmd->add_option("--ring", ring_path)->required();
  sign_cmd->add_option("--key", key_path)->required();
  sign_cmd->add_option("--index", index)->required();
  sign_cmd->add_option("--msg", msg_path)->required();
  sign_cmd->add_option("--seed", seed)->required();
  sign_cmd->add_option("--out", out_path)->required();

  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature file");
  verify_cmd->add_option("--ring", ring_path)->required();
  verify_cmd->add_option("--msg", msg_path)->required();
  verify_cmd->add_option("--sig", sig_path)->required();

  auto* selftest_cmd = app.add_subcommand("selftest", "Run the harness suites at reduced size");
  selftest_cmd->add_option("--preset", preset_name)->required();
  selftest_cmd->add_option("--seed", seed)->required();
  selftest_cmd->add_option("--json", json_path, "Also write a JSON summary here");

  auto* bench_cmd = app.add_subcommand("bench", "Time sign/verify across ring sizes");
  bench_cmd->add_option("--preset", preset_name)->required();
  bench_cmd->add_option("--ring-sizes", sizes_text);
  bench_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*params_cmd) {
      const auto p = load_preset(preset_name);
      warn_if_insecure(preset_name);
      std::cout << lrs::canonical_text(p);
      return 0;
    }
    if (*keygen_cmd) {
      const auto p = load_preset(preset_name);
      warn_if_insecure(preset_name);
      std::error_code ec;
      std::filesystem::create_directories(out_path, ec);
      if (ec) {
        throw IoError(fmt::format("cannot create {}: {}", out_path, ec.message()));
      }
      lrs::ChaChaStream rng(seed);
      const lrs::RingKeys keys = lrs::ring_keygen(p, ring_size, rng);
      const auto dir = std::filesystem::path(out_path);
      write_file((dir / "ring.pub").string(), lrs::serialize_ring(keys.ring));
      for (std::size_t i = 0; i < ring_size; ++i) {
        write_file((dir / fmt::format("member_{}.sk", i)).string(),
                   lrs::serialize_secret_key(p, ring_size, i, keys.secret_keys[i]));
      }
      std::cout << fmt::format("wrote {} and {} secret keys\n", (dir / "ring.pub").string(), ring_size);
      return 0;
    }
    if (*sign_cmd) {
      const lrs::RingPublic ring = lrs::deserialize_ring(read_file(ring_path));
      const lrs::MemberKey key = lrs::deserialize_secret_key(read_file(key_path));
      const lrs::Bytes msg = read_file(msg_path);
      if (key.index != index) {
        throw UsageError(fmt::format("--index {} but the key file belongs to member {}", index, key.index));
      }
      if (!(key.params == ring.params()) || key.ring_size != ring.size() ||
          !(lrs::mat_mul_mod(ring.members()[index], key.key.matrix()) == ring.target())) {
        throw lrs::FormatError("secret key does not belong to this ring");
      }
      lrs::ChaChaStream rng(seed, 1);
      const lrs::RingSignature sig = lrs::sign(msg, ring, key.key, index, rng);
      write_file(out_path, lrs::serialize_signature(ring.params(), sig));
      return 0;
    }
    if (*verify_cmd) {
      const lrs::RingPublic ring = lrs::deserialize_ring(read_file(ring_path));
      const lrs::DecodedSignature sig = lrs::deserialize_signature(read_file(sig_path));
      const lrs::Bytes msg = read_file(msg_path);
      if (!(sig.params == ring.params()) || sig.signature.responses.size() != ring.size()) {
        throw lrs::FormatError("signature shape does not match the ring");
      }
      const lrs::VerifyResult r = lrs::verify(msg, ring, sig.signature);
      if (r.accepted) {
        std::cout << "accept\n";
        return 0;
      }
      std::cout << "reject reason=" << lrs::to_string(r.reason) << "\n";
      return kExitReject;
    }
    if (*selftest_cmd) {
      const auto p = load_preset(preset_name);
      warn_if_insecure(preset_name);
      const lrs::Report report = lrs::run_selftest(p, seed);
      std::cout << report.text();
      if (!json_path.empty()) {
        const std::string j = report.json() + "\n";
        write_file(json_path, lrs::Bytes(j.begin(), j.end()));
      }
      return report.pass() ? 0 : kExitReject;
    }
    if (*bench_cmd) {
      const auto p = load_preset(preset_name);
      warn_if_insecure(preset_name);
      const auto sizes = parse_sizes(sizes_text);
      const lrs::BenchResult r = lrs::bench_scaling(p, sizes, reps, seed);
      std::cout << lrs::format_bench(r);
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const lrs::FormatError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const lrs::DimensionError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const lrs::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
