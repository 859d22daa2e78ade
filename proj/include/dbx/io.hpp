#ifndef DBX_IO_HPP
#define DBX_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "dbx/certificates.hpp"
#include "dbx/graph.hpp"
#include "dbx/poly.hpp"
#include "dbx/singular.hpp"
#include "dbx/symanzik.hpp"

namespace dbx {

using json = nlohmann::ordered_json;

// All serializers are deterministic: key order is fixed, rationals are decimal
// strings ("p" or "p/q"), doubles are shortest-round-trip "%.17g" strings, and
// no timestamps or environment data appear anywhere.

json poly_to_json(const SparsePoly& p);
SparsePoly poly_from_json(const json& j);

json graph_to_json(const TwoLoopGraph& g);
TwoLoopGraph graph_from_json(const json& j);

json kinematics_to_json(const KinematicData& kin);
KinematicData kinematics_from_json(const json& j);

json decomposition_to_json(const SymanzikDecomposition& d);
SymanzikDecomposition decomposition_from_json(const json& j);

json certificate_to_json(const CertificateResult& c);
json certificates_to_json(const std::vector<CertificateResult>& cs);

json singular_point_to_json(const SingularPoint& p);
json solve_report_to_json(const SolveReport& r);
json genericity_to_json(const GenericityReport& r);

// Canonical file text for a JSON document (2-space indent, trailing newline).
std::string dump_json(const json& j);

std::string format_double(double x);

// Human-readable renderings for the text output format.
std::string decomposition_to_text(const SymanzikDecomposition& d);
std::string certificates_to_text(const std::vector<CertificateResult>& cs);
std::string genericity_to_text(const GenericityReport& r);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace dbx

#endif  // DBX_IO_HPP
