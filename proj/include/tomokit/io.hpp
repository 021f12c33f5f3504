#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tomokit/fock_tomography.hpp"
#include "tomokit/operator_space.hpp"
#include "tomokit/spin_tomography.hpp"
#include "tomokit/symplectic_tomography.hpp"
#include "tomokit/tomographic_sets.hpp"

namespace tomo::io {

using nlohmann::json;

// Parse failures become ParseError carrying "path:byte N" or a JSON pointer.
json read_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& origin);
void write_json_file(const std::string& path, const json& j);

json to_json(const OperatorMatrix& m);
OperatorMatrix matrix_from_json(const json& j, const std::string& where = "");

json to_json(const TomographicSet& s);
TomographicSet set_from_json(const json& j, const std::string& where = "");

struct FiniteTomogramFile {
  TomographicSet set;
  std::vector<double> values;
};
// "set" may be inline or a path relative to base_dir.
FiniteTomogramFile finite_tomogram_from_json(const json& j, const std::string& base_dir, const std::string& where = "");
json finite_tomogram_to_json(const TomographicSet& set, const Tomogram& tom);

json to_json(const SpinTomogramGrid& g);
SpinTomogramGrid spin_grid_from_json(const json& j, const std::string& where = "");

json to_json(const PhotonTomogram& t);
PhotonTomogram photon_tomogram_from_json(const json& j, const std::string& where = "");

json to_json(const UniformGrid& g);
UniformGrid uniform_grid_from_json(const json& j, const std::string& where = "");

json to_json(const SymplecticTomogram& t);
SymplecticTomogram symplectic_tomogram_from_json(const json& j, const std::string& where = "");

json to_json(const GridWavefunction& w);
GridWavefunction wavefunction_from_json(const json& j, const std::string& where = "");

json to_json(const DensityKernel& k);

// "finite", "spin", "photon" or "symplectic": the "scheme" field when present,
// otherwise inferred from the keys. Empty when nothing matches.
std::string detect_scheme(const json& j);

}  // namespace tomo::io
