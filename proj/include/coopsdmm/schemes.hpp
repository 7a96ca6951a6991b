#pragma once

#include <span>
#include <string>
#include <vector>

#include "coopsdmm/polycode.hpp"
#include "coopsdmm/simnet.hpp"
#include "coopsdmm/streamcipher.hpp"
#include "coopsdmm/transcript.hpp"

namespace coopsdmm::schemes {

using field::FieldElement;
using field::PrimeField;
using field::SeededPrg;
using matgrid::BlockList;
using matgrid::FieldMatrix;

enum class Mode { MatdotCoop, MatdotEnc, GaspPlain, GaspCoop, GaspEnc };

std::string mode_name(Mode mode);
Mode mode_from_name(const std::string& name);
bool is_gasp(Mode mode);
bool is_encrypted(Mode mode);
/// Modes whose cooperation messages are plaintext, so cooperation groups
/// must respect the collusion graph.
bool is_it_cooperative(Mode mode);

struct SdmmConfig {
    std::size_t t = 0, s = 0, r = 0; // A is t x s, B is s x r
    std::size_t p = 1;               // IPP block count (MatDot); GASP is the fixed 2x2 grid
    std::size_t x = 1;               // collusion / cooperation size
    std::size_t n = 0;               // server count
    std::uint64_t q = 0;
    std::uint64_t seed = 0;
    Mode mode = Mode::MatdotCoop;
    /// Test-only regression knob: pins evaluation point 0 onto server 0,
    /// which leaks the constant blocks. Never enable outside security tests.
    bool allow_zero_point = false;
    streamcipher::PrfKind prf = streamcipher::PrfKind::Chacha20;

    void validate() const;
    std::size_t recovery_threshold() const; // 2p + 2X - 1, or 11 for GASP 2x2
    PrimeField make_field() const;
    std::string partition_label() const; // "p" for MatDot, "2x2" for GASP
};

/// Derives a named substream of the run seed; order-independent.
SeededPrg derive_stream(std::uint64_t seed, std::uint64_t salt);

inline constexpr std::uint64_t kSaltPoints = 1;
inline constexpr std::uint64_t kSaltNoise = 2;
inline constexpr std::uint64_t kSaltKeys = 3;
inline constexpr std::uint64_t kSaltStraggler = 4;
inline constexpr std::uint64_t kSaltInputs = 5;

/// N distinct nonzero evaluation points, deterministic in the seed. Point 0
/// is forbidden: every randomness exponent is >= 1, so f(0) and g(0) expose
/// plaintext blocks. For GASP modes the set is resampled until every
/// R_c-subset yields an invertible decode matrix.
std::vector<FieldElement> select_points(const SdmmConfig& cfg);

struct ShareBundle {
    std::size_t server = 0;
    FieldElement point;
    FieldMatrix a_share; // f(a_i)
    FieldMatrix b_share; // g(a_i)
};

// Encoding polynomials. MatDot: f = sum A_j x^j + sum Z_t x^(p+t),
// g = sum B_j x^(p-1-j) + sum S_t x^(p+t); the product h carries
// sum_j A_j B_j = AB on x^(p-1).
polycode::SparsePoly matdot_f_poly(const BlockList& a_blocks, std::span<const FieldMatrix> z);
polycode::SparsePoly matdot_g_poly(const BlockList& b_blocks, std::span<const FieldMatrix> s);
// GASP 2x2: f = A_0 + A_1 x + Z_0 x^4 + Z_1 x^6, g = B_0 + B_1 x^2 + S_0 x^4 + S_1 x^5.
polycode::SparsePoly gasp_f_poly(const BlockList& a_blocks, std::span<const FieldMatrix> z);
polycode::SparsePoly gasp_g_poly(const BlockList& b_blocks, std::span<const FieldMatrix> s);

/// The product polynomial support {0..6, 8..11}; exponent 7 is absent.
const polycode::ExponentSet& gasp_exponent_set();
/// The four target exponents 0..3 carrying the output grid.
std::span<const std::size_t> gasp_targets();

std::vector<ShareBundle> matdot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                       const SdmmConfig& cfg, SeededPrg& prg);
std::vector<ShareBundle> gasp_encode_2x2(const FieldMatrix& a, const FieldMatrix& b,
                                         const SdmmConfig& cfg, SeededPrg& prg);

/// Response-order slices of size X; the last group takes the remainder.
/// The representative is the first member of each slice.
std::vector<std::vector<std::size_t>> group_plan(std::span<const std::size_t> responders, std::size_t x);

struct RunResult {
    FieldMatrix product;
    simnet::Transcript transcript;
    simnet::CostLedger report; // headline buckets from the closed forms
    std::vector<std::size_t> responders;
    std::vector<std::vector<std::size_t>> groups;
    std::size_t recovery_threshold = 0;
};

RunResult matdot_coop_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                          const simnet::StragglerModel& straggler);
RunResult matdot_enc_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                         const simnet::StragglerModel& straggler);
RunResult gasp_plain_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                         const simnet::StragglerModel& straggler);
RunResult gasp_coop_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                        const simnet::StragglerModel& straggler);
RunResult gasp_enc_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                       const simnet::StragglerModel& straggler);
/// Dispatch on cfg.mode.
RunResult run_scheme(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                     const simnet::StragglerModel& straggler);

// ----- XTPIR via cooperation -----

struct PirConfig {
    std::size_t files = 0;      // m
    std::size_t stripe = 1;     // rows per file, s/m
    std::size_t record_len = 0; // r
    std::size_t p = 1;
    std::size_t x = 1; // X = T
    std::size_t n = 0;
    std::uint64_t q = 0;
    std::uint64_t seed = 0;
    streamcipher::PrfKind prf = streamcipher::PrfKind::Chacha20;

    std::size_t data_rows() const { return files * stripe; } // s
    std::size_t recovery_threshold() const { return 2 * p + 2 * x - 1; }
    void validate() const;
    PrimeField make_field() const;
};

struct PirSetup {
    std::vector<FieldElement> points;
    std::vector<FieldMatrix> stored; // g(a_i) on server i
    simnet::Transcript transcript;   // storage-phase events
};

/// X-secure storage of the stacked file matrix (s x r) via the g-encoding.
PirSetup pir_setup(const FieldMatrix& files_matrix, const PirConfig& cfg, SeededPrg& prg);

/// The selector (e_i^T kron I_stripe) with x^i = selector * B.
FieldMatrix pir_query_matrix(const PirConfig& cfg, std::size_t index);

struct PirResult {
    FieldMatrix file;
    std::uint64_t rate_num = 0, rate_den = 0; // file size / download, reduced
    simnet::Transcript transcript;
    simnet::CostLedger report;
    std::vector<std::size_t> responders;
    std::vector<std::vector<std::size_t>> groups;
    std::size_t recovery_threshold = 0;
};

PirResult pir_retrieve(const PirSetup& setup, std::size_t index, const PirConfig& cfg,
                       const simnet::StragglerModel& straggler, SeededPrg& prg);

// ----- exhaustive security probes -----

/// Joint (f(a_i), g(a_i)) view with all randomness entries enumerated.
simnet::ProbeInstance matdot_probe_instance(const SdmmConfig& cfg, const FieldMatrix& a,
                                            const FieldMatrix& b);
/// Query-share view f(a_i) for the given file index.
simnet::ProbeInstance pir_query_probe_instance(const PirConfig& cfg, std::size_t index);

} // namespace coopsdmm::schemes
