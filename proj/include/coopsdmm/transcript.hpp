#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace coopsdmm::simnet {

/// Protocol phases; Auxiliary tags negligible-size metadata (keys, nonces,
/// evaluation points, identity notices) excluded from headline costs.
enum class Phase { Upload, Cooperate, Decode, Auxiliary };

struct Party {
    enum class Kind { User, Server };
    Kind kind = Kind::User;
    std::size_t index = 0;

    static Party user() { return {Kind::User, 0}; }
    static Party server(std::size_t i) { return {Kind::Server, i}; }
    std::string label() const;
    bool operator==(const Party&) const = default;
};

struct TranscriptEvent {
    Phase phase;
    Party src;
    Party dst;
    std::string payload;   // descriptor, e.g. "f_share"
    std::uint64_t symbols; // F_q symbol count (word count for byte payloads)
};

/// Ordered message log of one protocol run; replay under the same seed is
/// byte-identical.
class Transcript {
public:
    void record(Phase phase, Party src, Party dst, std::string payload, std::uint64_t symbols);
    const std::vector<TranscriptEvent>& events() const { return events_; }
    std::string to_jsonl() const;
    std::uint64_t hash() const; // FNV-1a over the JSONL bytes
    void append(const Transcript& other);

private:
    std::vector<TranscriptEvent> events_;
};

struct CostLedger {
    std::uint64_t upload = 0;
    std::uint64_t download = 0;
    std::uint64_t cooperation = 0;
    std::uint64_t auxiliary = 0;

    bool operator==(const CostLedger&) const = default;
    /// Headline buckets only; auxiliary is reported, never compared.
    bool matches_headline(const CostLedger& other) const {
        return upload == other.upload && download == other.download && cooperation == other.cooperation;
    }
};

/// Rebuilds the ledger from the transcript alone (recount, not trusted
/// from the scheme).
CostLedger recount(const Transcript& transcript);

std::string phase_name(Phase p);

} // namespace coopsdmm::simnet
