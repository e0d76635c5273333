#pragma once

#include <json.hpp>
#include <string>

#include "uff/frame_function.hpp"
#include "uff/operator_frame.hpp"
#include "uff/product_state.hpp"
#include "uff/uob.hpp"

namespace uff {

using Json = nlohmann::json;

// Decoders take a `path` used verbatim in diagnostics; every failure is
// an InputError naming the offending field.

Json encode(const ProjectivePoint& p);
ProjectivePoint decode_projective_point(const Json& j, const std::string& path);

Json encode(const CanonicalQubit& q);
CanonicalQubit decode_canonical_qubit(const Json& j, const std::string& path);

Json encode(const SubsetMask& m);
SubsetMask decode_subset_mask(const Json& j, const std::string& path);

Json encode(const FactorState& f);
FactorState decode_factor_state(const Json& j, const std::string& path);

Json encode(const ProductState& s);
ProductState decode_product_state(const Json& j, const std::string& path);

Json encode(const Uob& u);
Uob decode_uob(const Json& j, const std::string& path);

Json encode(const SplitTree& t);
SplitTree decode_split_tree(const Json& j, const std::string& path);

Json encode(const HermitianOperator& h);
HermitianOperator decode_hermitian(const Json& j, const std::string& path);

// Hook-backed families cannot be serialized (InputError).
Json encode(const PhiFamily& fam);
PhiFamily decode_phi_family(const Json& j, const std::string& path);

Json encode(const OperatorPhiFamily& fam);
OperatorPhiFamily decode_operator_phi_family(const Json& j, const std::string& path);

// File helpers; read failures and parse errors become InputError naming
// the file.
Json load_json_file(const std::string& file);
void write_json_file(const std::string& file, const Json& j);
// Serialization used for every report and data file the tools write:
// two-space indent, sorted keys, trailing newline. Byte-stable for equal
// values.
std::string to_stable_string(const Json& j);

} // namespace uff
