#include "coopsdmm/transcript.hpp"

#include <sstream>

namespace coopsdmm::simnet {

std::string Party::label() const {
    return kind == Kind::User ? "user" : "server" + std::to_string(index);
}

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::Upload: return "upload";
        case Phase::Cooperate: return "cooperate";
        case Phase::Decode: return "decode";
        case Phase::Auxiliary: return "auxiliary";
    }
    return "?";
}

void Transcript::record(Phase phase, Party src, Party dst, std::string payload, std::uint64_t symbols) {
    events_.push_back(TranscriptEvent{phase, src, dst, std::move(payload), symbols});
}

void Transcript::append(const Transcript& other) {
    events_.insert(events_.end(), other.events_.begin(), other.events_.end());
}

std::string Transcript::to_jsonl() const {
    std::ostringstream out;
    for (const auto& e : events_) {
        out << "{\"phase\":\"" << phase_name(e.phase) << "\",\"src\":\"" << e.src.label()
            << "\",\"dst\":\"" << e.dst.label() << "\",\"payload\":\"" << e.payload
            << "\",\"symbols\":" << e.symbols << "}\n";
    }
    return out.str();
}

std::uint64_t Transcript::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_jsonl()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CostLedger recount(const Transcript& transcript) {
    CostLedger ledger;
    for (const auto& e : transcript.events()) {
        switch (e.phase) {
            case Phase::Upload: ledger.upload += e.symbols; break;
            case Phase::Cooperate: ledger.cooperation += e.symbols; break;
            case Phase::Decode: ledger.download += e.symbols; break;
            case Phase::Auxiliary: ledger.auxiliary += e.symbols; break;
        }
    }
    return ledger;
}

} // namespace coopsdmm::simnet
