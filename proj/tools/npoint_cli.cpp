// Copyright 2026 The npoint Authors
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

// npoint: command-line front end for tree enumeration, convolution
// transforms, n-point evaluation on model files and the symmetry-factor table.
//
// Exit status: 0 success, 1 verification mismatch, 2 usage error, 3 model error.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "npoint/npoint.hpp"

namespace {

using npoint::Rational;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kModel = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw UsageError("empty name in list '" + s + "'");
    out.push_back(item);
  }
  return out;
}

// Relative paths that do not exist here are looked up in $NPOINT_MODEL_DIR.
std::filesystem::path resolve_model(const std::string& arg) {
  std::filesystem::path p(arg);
  if (arg == "-" || p.is_absolute() || std::filesystem::exists(p)) return p;
  if (const char* dir = std::getenv("NPOINT_MODEL_DIR"); dir && *dir) {
    auto candidate = std::filesystem::path(dir) / p;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return p;
}

// ---------------------------------------------------------------------------

struct TreesArgs {
  std::size_t vertices = 1;
  std::size_t min_valence = 0;
  std::string externals;
  std::string fermions;
  std::string format = "table";
};

int run_trees(const TreesArgs& args) {
  if (args.vertices == 0) throw UsageError("--vertices must be at least 1");
  auto reg = std::make_shared<npoint::LabelRegistry>();
  const auto odd_names = args.fermions.empty() ? std::vector<std::string>{} : split_list(args.fermions);
  const auto names = args.externals.empty() ? std::vector<std::string>{} : split_list(args.externals);
  std::vector<npoint::LabelId> word;
  for (const auto& name : names) {
    auto id = reg->find(name);
    if (!id) {
      const bool odd = std::find(odd_names.begin(), odd_names.end(), name) != odd_names.end();
      id = reg->add(name, odd ? npoint::Parity::odd : npoint::Parity::even);
    }
    word.push_back(*id);
  }
  for (const auto& f : odd_names) {
    if (!reg->find(f)) throw UsageError("fermion '" + f + "' is not among the externals");
  }

  const npoint::RegistryPtr registry = reg;
  const auto a = npoint::AlgebraElement<Rational>::product(registry, word);
  // Delta_{>=m-1} only builds trees whose valences are all >= m.
  const unsigned cut = args.min_valence >= 2 ? static_cast<unsigned>(args.min_valence - 1) : 0;
  const auto g = npoint::lambda_trees(a, args.vertices - 1, npoint::Truncation::at_least(cut));
  std::vector<npoint::TreeGraph<Rational>> trees;
  for (auto& t : npoint::extract_trees(g)) {
    if (t.min_valence() >= args.min_valence) trees.push_back(std::move(t));
  }

  if (args.format == "json") {
    std::cout << npoint::trees_to_json(*registry, trees).dump(2) << '\n';
  } else if (args.format == "dot") {
    npoint::write_tree_dot(std::cout, *registry, trees);
  } else {
    npoint::write_tree_table(std::cout, *registry, trees);
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct TransformArgs {
  std::string model;
  std::string direction;
  long degree_bound = -1;
  std::optional<std::string> functional;
};

int run_transform(const TransformArgs& args) {
  if (args.degree_bound < 0) throw UsageError("--degree-bound must be non-negative");
  auto model = npoint::load_model(resolve_model(args.model));
  const bool to_complete = args.direction == "exp";
  const npoint::Role from = to_complete ? npoint::Role::sigma : npoint::Role::rho;
  const auto& source = model.find(from, args.functional);
  const auto bound = static_cast<std::size_t>(args.degree_bound);
  npoint::NamedFunctional result{source.name, to_complete ? npoint::Role::rho : npoint::Role::sigma,
                                 to_complete ? npoint::star_exp(source.functional, bound)
                                             : npoint::star_log(source.functional, bound),
                                 source.vanishing_one_point};
  for (auto& f : model.functionals) {
    if (f.name == result.name) f = result;
  }
  std::cout << npoint::model_to_json(model).dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

struct NpointArgs {
  std::string model;
  std::string externals;
  std::string mode = "standard";
  std::optional<std::size_t> k_max;
  std::optional<std::string> functional;
  bool as_float = false;
};

npoint::Mode parse_mode(const std::string& s) {
  if (s == "standard") return npoint::Mode::standard;
  if (s == "modified") return npoint::Mode::modified;
  if (s == "tree_level") return npoint::Mode::tree_level;
  throw UsageError("unknown mode '" + s + "'");
}

int run_npoint(const NpointArgs& args) {
  const npoint::Mode mode = parse_mode(args.mode);
  const auto model = npoint::load_model(resolve_model(args.model));
  std::vector<npoint::LabelId> word;
  for (const auto& name : split_list(args.externals)) word.push_back(model.registry->id(name));

  std::size_t k_max = 0;
  if (mode == npoint::Mode::standard) {
    if (!args.k_max) throw UsageError("standard mode needs --k-max");
    k_max = *args.k_max;
    std::cerr << "warning: standard mode sums an infinite series; result truncated at k = " << k_max << '\n';
  } else {
    k_max = args.k_max.value_or(std::max<std::size_t>(1, word.size() >= 2 ? word.size() - 2 : 1));
  }
  if (k_max == 0) throw UsageError("--k-max must be at least 1");

  const auto a = npoint::AlgebraElement<Rational>::product(model.registry, word);
  const Rational value = npoint::connected_from_1pi(model, a, k_max, mode, args.functional);
  if (args.as_float) {
    std::cout << std::setprecision(17) << value.get_d() << '\n';
  } else {
    std::cout << npoint::to_string(value) << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------------------

int run_verify_appendix(std::size_t max_k) {
  if (max_k < 1) throw UsageError("--max-k must be at least 1");
  if (max_k > 7) throw UsageError("--max-k is capped at 7 by the brute-force oracle");
  auto reg = std::make_shared<npoint::LabelRegistry>();
  const npoint::RegistryPtr registry = reg;
  const auto unit = npoint::AlgebraElement<Rational>::unit(registry);
  bool ok = true;
  for (std::size_t k = 1; k <= max_k; ++k) {
    const auto trees = npoint::extract_trees(npoint::lambda_trees(unit, k - 1));
    const std::size_t expected = npoint::oracle::enumerate_trees<Rational>(k, {}).size();
    const bool count_ok = trees.size() == expected;
    ok = ok && count_ok;
    std::cout << "k=" << k << " trees=" << trees.size() << " expected=" << expected << (count_ok ? "" : " MISMATCH")
              << '\n';
    for (const auto& t : trees) {
      const auto s = npoint::oracle::symmetry_factor(t);
      const bool weight_ok = t.weight == Rational(1, static_cast<unsigned long>(s));
      ok = ok && weight_ok;
      std::cout << "  weight=" << npoint::to_string(t.weight) << " s=" << s << (weight_ok ? " ok" : " MISMATCH");
      std::cout << "  ";
      for (std::size_t e = 0; e < t.edges.size(); ++e) {
        if (e) std::cout << ' ';
        std::cout << npoint::vertex_name(t.edges[e].first) << '-' << npoint::vertex_name(t.edges[e].second);
      }
      std::cout << '\n';
    }
  }
  std::cout << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trees, convolution transforms and n-point functions of finite toy models"};
  app.name("npoint");
  app.require_subcommand(1);

  TreesArgs trees;
  auto* trees_cmd = app.add_subcommand("trees", "List the weighted trees of Lambda^{k-1} on the given external legs");
  trees_cmd->add_option("--vertices,-k", trees.vertices, "Number of vertices")->required();
  trees_cmd->add_option("--min-valence,-m", trees.min_valence, "Keep trees whose vertices all have this valence");
  trees_cmd->add_option("--externals,-e", trees.externals, "Comma-separated external leg names (repeats allowed)");
  trees_cmd->add_option("--fermions", trees.fermions, "Comma-separated names among the externals that are odd");
  trees_cmd->add_option("--format", trees.format, "Output format")
      ->check(CLI::IsMember({"table", "json", "dot"}));

  TransformArgs transform;
  auto* transform_cmd = app.add_subcommand("transform", "Apply exp or log under convolution to a model functional");
  transform_cmd->add_option("model", transform.model, "Model file, or - for stdin")->required();
  transform_cmd->add_option("--direction", transform.direction, "exp: sigma to rho, log: rho to sigma")
      ->required()
      ->check(CLI::IsMember({"exp", "log"}));
  transform_cmd->add_option("--degree-bound,-d", transform.degree_bound, "Highest tabulated degree")->required();
  transform_cmd->add_option("--functional", transform.functional, "Functional name when several share the role");

  NpointArgs np;
  auto* npoint_cmd = app.add_subcommand("npoint", "Connected n-point value from the model's vertex functional");
  npoint_cmd->add_option("model", np.model, "Model file, or - for stdin")->required();
  npoint_cmd->add_option("--externals,-e", np.externals, "Comma-separated external leg names")->required();
  npoint_cmd->add_option("--mode", np.mode, "standard, modified or tree_level")
      ->check(CLI::IsMember({"standard", "modified", "tree_level"}));
  npoint_cmd->add_option("--k-max", np.k_max, "Largest number of vertices");
  npoint_cmd->add_option("--functional", np.functional, "Vertex functional name when several share the role");
  npoint_cmd->add_flag("--float", np.as_float, "Print a decimal approximation instead of the exact fraction");

  std::size_t max_k = 7;
  auto* verify_cmd = app.add_subcommand("verify-appendix", "Check tree weights 1/s and tree counts up to k vertices");
  verify_cmd->add_option("--max-k", max_k, "Largest vertex count (at most 7)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*trees_cmd) return run_trees(trees);
    if (*transform_cmd) return run_transform(transform);
    if (*npoint_cmd) return run_npoint(np);
    if (*verify_cmd) return run_verify_appendix(max_k);
  } catch (const UsageError& e) {
    std::cerr << "npoint: " << e.what() << '\n';
    return kUsage;
  } catch (const npoint::OracleCap& e) {
    std::cerr << "npoint: " << e.what() << '\n';
    return kUsage;
  } catch (const npoint::Error& e) {
    std::cerr << "npoint: " << e.what() << '\n';
    return kModel;
  }
  return kUsage;
}
