#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "mtuple/monomial_basis.hpp"
#include "mtuple/tuples.hpp"

namespace mtuple::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kTupleFormat = "mtuple.tuples/1";
inline constexpr const char* kBatteryFormat = "mtuple.battery/1";
inline constexpr const char* kOperatorFormat = "mtuple.operator/1";

Json spec_to_json(const BasisSpec& spec);
BasisSpec spec_from_json(int dimension, const Json& j);

/// Ordered monomial descriptors: each monomial is a list of exponent vectors.
Json basis_to_json(const MonomialBasis& basis);

/// {format, dimension, spec, basis, tuples: [{id, alphas}]}
Json family_to_json(const TupleFamily& family);
/// {format, dimension, families: [...]}
Json battery_to_json(const TupleBattery& battery);

struct LoadOptions {
  /// Check every loaded tuple against the exact constraint system.
  bool verify_constraints = true;
};

struct LoadedTuples {
  TupleBattery battery;
  std::vector<std::string> warnings;
};

/// Accepts a single-family or a battery document. Non-primitive coefficient
/// vectors are reduced (with a warning); a basis that differs from the
/// canonical basis of the declared spec, a wrong dimension, or coefficients
/// outside the solution space are FormatErrors.
LoadedTuples tuples_from_json(const Json& j, LoadOptions options = {});

void save_tuples(const std::filesystem::path& path, const TupleBattery& battery);
void save_tuples(const std::filesystem::path& path, const TupleFamily& family);
LoadedTuples load_tuples(const std::filesystem::path& path, LoadOptions options = {});
/// As load_tuples, additionally requiring every family to have `dimension`.
LoadedTuples load_tuples(const std::filesystem::path& path, int dimension, LoadOptions options = {});

Json operator_to_json(const MonomialOperator& op);
MonomialOperator operator_from_json(const Json& j);
Json operator_to_json(const MomentOperator& op);
MomentOperator moment_operator_from_json(const Json& j);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace mtuple::io
