#ifndef PEDYN_CLI_HPP
#define PEDYN_CLI_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "json.hpp"

#include "pedyn/config.hpp"
#include "pedyn/encoder.hpp"
#include "pedyn/engine.hpp"
#include "pedyn/world.hpp"

namespace pedyn {

inline constexpr const char* kToolVersion = "1.0.0";

/// Entry point behind main(); returns the process exit code.
int run_cli(int argc, const char* const* argv);

/// The seed an invocation actually uses: --seed beats PEDYN_SEED beats the
/// config value. Throws if the environment value is not a valid integer.
std::uint64_t effective_seed(const ExperimentConfig& cfg, const std::uint64_t* cli_seed);

/// Writes the frozen encoder together with the scene it was trained on,
/// so later runs can verify they are using matching inputs.
nlohmann::json encoder_document(const ExperimentConfig& cfg, const Scene& scene,
                                const AutoencoderModel* model, const PretrainStats* stats);

/// Loads an encoder document and checks it against the config and the
/// expected scene. Throws with a diagnostic on any mismatch.
std::unique_ptr<SensoryEncoder> load_encoder_document(const nlohmann::json& doc,
                                                      const ExperimentConfig& cfg,
                                                      const Scene& expected_scene);

} // namespace pedyn

#endif // PEDYN_CLI_HPP
