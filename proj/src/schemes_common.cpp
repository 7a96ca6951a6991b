#include "coopsdmm/schemes.hpp"

#include <algorithm>
#include <numeric>

namespace coopsdmm::schemes {

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::MatdotCoop: return "matdot-coop";
        case Mode::MatdotEnc: return "matdot-enc";
        case Mode::GaspPlain: return "gasp-plain";
        case Mode::GaspCoop: return "gasp-coop";
        case Mode::GaspEnc: return "gasp-enc";
    }
    return "?";
}

Mode mode_from_name(const std::string& name) {
    if (name == "matdot-coop") return Mode::MatdotCoop;
    if (name == "matdot-enc") return Mode::MatdotEnc;
    if (name == "gasp-plain") return Mode::GaspPlain;
    if (name == "gasp-coop") return Mode::GaspCoop;
    if (name == "gasp-enc") return Mode::GaspEnc;
    throw ConfigError("unknown mode '" + name + "'");
}

bool is_gasp(Mode mode) {
    return mode == Mode::GaspPlain || mode == Mode::GaspCoop || mode == Mode::GaspEnc;
}

bool is_encrypted(Mode mode) {
    return mode == Mode::MatdotEnc || mode == Mode::GaspEnc;
}

bool is_it_cooperative(Mode mode) {
    return mode == Mode::MatdotCoop || mode == Mode::GaspCoop;
}

std::size_t SdmmConfig::recovery_threshold() const {
    return is_gasp(mode) ? 11 : 2 * p + 2 * x - 1;
}

PrimeField SdmmConfig::make_field() const {
    return PrimeField(q);
}

std::string SdmmConfig::partition_label() const {
    return is_gasp(mode) ? "2x2" : std::to_string(p);
}

void SdmmConfig::validate() const {
    if (t == 0 || s == 0 || r == 0) throw ConfigError("config: matrix dimensions must be positive");
    if (x == 0) throw ConfigError("config: the scheme requires X >= 1");
    if (n == 0) throw ConfigError("config: server count must be positive");
    if (!field::is_prime_u64(q)) throw ConfigError("config: q must be prime");
    if (q <= n + 1) throw FieldTooSmall("config: need q > N + 1 for N distinct nonzero points");
    if (is_gasp(mode)) {
        if (x != 2) throw ConfigError("config: the GASP 2x2 example is fixed at X = 2");
        if (t % 2 != 0 || r % 2 != 0) throw ConfigError("config: GASP 2x2 needs even t and r");
    } else {
        if (p == 0) throw ConfigError("config: p must be positive");
        if (s % p != 0) throw IndivisibleDimension("config: p must divide s");
    }
    if (n < recovery_threshold())
        throw ConfigError("config: N must be at least the recovery threshold " +
                          std::to_string(recovery_threshold()));
}

SeededPrg derive_stream(std::uint64_t seed, std::uint64_t salt) {
    SeededPrg root(seed);
    return root.fork(salt);
}

namespace {

std::vector<FieldElement> draw_distinct_points(const PrimeField& f, std::size_t count, SeededPrg& prg,
                                               bool pin_zero_first) {
    std::vector<FieldElement> pts;
    pts.reserve(count);
    if (pin_zero_first) pts.emplace_back(0, f);
    while (pts.size() < count) {
        FieldElement candidate = prg.next_element(f);
        if (candidate.is_zero()) continue;
        bool fresh = std::none_of(pts.begin(), pts.end(),
                                  [&](const FieldElement& e) { return e == candidate; });
        if (fresh) pts.push_back(candidate);
    }
    return pts;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool gasp_points_decodable(std::span<const FieldElement> points, std::size_t rc) {
    std::vector<std::size_t> combo(rc);
    for (std::size_t i = 0; i < rc; ++i) combo[i] = i;
    do {
        std::vector<FieldElement> sub;
        sub.reserve(rc);
        for (std::size_t i : combo) sub.push_back(points[i]);
        auto inv = matgrid::try_invert(polycode::generalized_vandermonde(sub, gasp_exponent_set()));
        if (!inv) return false;
    } while (next_combination(combo, points.size()));
    return true;
}

} // namespace

std::vector<FieldElement> select_points(const SdmmConfig& cfg) {
    cfg.validate();
    PrimeField f = cfg.make_field();
    SeededPrg prg = derive_stream(cfg.seed, kSaltPoints);
    if (!is_gasp(cfg.mode))
        return draw_distinct_points(f, cfg.n, prg, cfg.allow_zero_point);
    const std::size_t rc = cfg.recovery_threshold();
    constexpr std::size_t kMaxAttempts = 2000;
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        auto pts = draw_distinct_points(f, cfg.n, prg, cfg.allow_zero_point);
        if (gasp_points_decodable(pts, rc)) return pts;
    }
    throw PointSearchExhausted("gasp point search: no fully decodable set after " +
                               std::to_string(2000) + " attempts");
}

std::vector<std::vector<std::size_t>> group_plan(std::span<const std::size_t> responders, std::size_t x) {
    if (x == 0) throw ConfigError("group plan: X must be positive");
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < responders.size(); i += x) {
        std::size_t end = std::min(responders.size(), i + x);
        groups.emplace_back(responders.begin() + i, responders.begin() + end);
    }
    return groups;
}

} // namespace coopsdmm::schemes
