#include "coopsdmm/schemes.hpp"
#include "schemes_internal.hpp"

namespace coopsdmm::schemes {

namespace detail {

void record_upload(Transcript& transcript, std::span<const ShareBundle> bundles,
                   std::uint64_t& aux_symbols) {
    for (const auto& bundle : bundles) {
        transcript.record(Phase::Upload, Party::user(), Party::server(bundle.server), "f_share",
                          bundle.a_share.size());
        transcript.record(Phase::Upload, Party::user(), Party::server(bundle.server), "g_share",
                          bundle.b_share.size());
        transcript.record(Phase::Auxiliary, Party::user(), Party::server(bundle.server), "eval_point", 1);
        aux_symbols += 1;
    }
}

void record_identities(Transcript& transcript, std::span<const std::size_t> responders,
                       std::uint64_t& aux_symbols) {
    for (std::size_t server : responders) {
        transcript.record(Phase::Auxiliary, Party::server(server), Party::user(), "identity", 1);
        aux_symbols += 1;
    }
}

matgrid::FieldMatrix expand_matrix(const streamcipher::CipherKey& key, const streamcipher::Nonce& nonce,
                                   std::size_t rows, std::size_t cols, const PrimeField& field,
                                   streamcipher::PrfKind prf) {
    auto stream = streamcipher::expand(key, nonce, rows * cols, field, prf);
    matgrid::FieldMatrix mask(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) mask.set(i, j, stream[i * cols + j]);
    return mask;
}

CoopRetrieveOutcome cooperative_coefficient_retrieve(std::span<const std::size_t> responders,
                                                     std::span<const FieldElement> responder_points,
                                                     std::span<const matgrid::FieldMatrix> products,
                                                     std::size_t theta, std::size_t x,
                                                     Transcript& transcript, std::uint64_t& aux_symbols) {
    record_identities(transcript, responders, aux_symbols);
    const std::size_t rc = responders.size();
    // Every responder needs the full responder point list to form its
    // Lagrange coefficient; the broadcast is negligible-size metadata.
    for (std::size_t server : responders) {
        transcript.record(Phase::Auxiliary, Party::user(), Party::server(server), "responder_points", rc);
        aux_symbols += rc;
    }
    auto weights = polycode::coeff_weights(responder_points, theta);
    std::vector<matgrid::FieldMatrix> weighted;
    weighted.reserve(rc);
    for (std::size_t i = 0; i < rc; ++i) weighted.push_back(matgrid::scale(products[i], weights[i]));

    CoopRetrieveOutcome out{matgrid::FieldMatrix(products[0].rows(), products[0].cols(),
                                                 products[0].field()),
                            group_plan(responders, x)};
    std::size_t base = 0;
    for (const auto& group : out.groups) {
        std::size_t rep = group.front();
        matgrid::FieldMatrix answer = weighted[base];
        for (std::size_t k = 1; k < group.size(); ++k) {
            transcript.record(Phase::Cooperate, Party::server(group[k]), Party::server(rep),
                              "weighted_share", weighted[base + k].size());
            answer = matgrid::add(answer, weighted[base + k]);
        }
        transcript.record(Phase::Decode, Party::server(rep), Party::user(), "group_sum", answer.size());
        out.sum = matgrid::add(out.sum, answer);
        base += group.size();
    }
    return out;
}

std::vector<matgrid::FieldMatrix> encrypted_hub_retrieve(
    std::span<const std::size_t> responders, std::span<const FieldElement> responder_points,
    std::span<const matgrid::FieldMatrix> products, const matgrid::FieldMatrix& weights,
    const PrimeField& field, streamcipher::PrfKind prf, SeededPrg& key_prg, Transcript& transcript,
    std::uint64_t& aux_symbols, const char* answer_payload) {
    record_identities(transcript, responders, aux_symbols);
    const std::size_t rc = responders.size();
    const std::size_t hub = responders.front();
    transcript.record(Phase::Auxiliary, Party::user(), Party::server(hub), "responder_points", rc);
    aux_symbols += rc;

    const std::size_t rows = products[0].rows(), cols = products[0].cols();
    std::vector<matgrid::FieldMatrix> masked;
    std::vector<matgrid::FieldMatrix> masks;
    masked.reserve(rc);
    masks.reserve(rc);
    for (std::size_t i = 0; i < rc; ++i) {
        auto key = streamcipher::CipherKey::random(key_prg);
        auto nonce = streamcipher::Nonce::random(key_prg);
        matgrid::FieldMatrix mask = expand_matrix(key, nonce, rows, cols, field, prf);
        masked.push_back(matgrid::add(products[i], mask));
        masks.push_back(std::move(mask));
        if (responders[i] != hub) {
            transcript.record(Phase::Cooperate, Party::server(responders[i]), Party::server(hub),
                              "ciphertext_body", rows * cols);
        }
        transcript.record(Phase::Auxiliary, Party::server(responders[i]), Party::user(), "cipher_key",
                          kKeyWords);
        transcript.record(Phase::Auxiliary, Party::server(responders[i]), Party::user(), "nonce",
                          kNonceWords);
        aux_symbols += kKeyWords + kNonceWords;
    }
    (void)responder_points; // the hub derives `weights` from the same list

    // Hub side: weighted combinations of the masked blocks, one answer.
    std::vector<matgrid::FieldMatrix> hub_blocks;
    std::uint64_t answer_symbols = 0;
    for (std::size_t trow = 0; trow < weights.rows(); ++trow) {
        matgrid::FieldMatrix acc(rows, cols, field);
        for (std::size_t i = 0; i < rc; ++i)
            acc = matgrid::add(acc, matgrid::scale(masked[i], weights.at(trow, i)));
        answer_symbols += acc.size();
        hub_blocks.push_back(std::move(acc));
    }
    transcript.record(Phase::Decode, Party::server(hub), Party::user(), answer_payload, answer_symbols);

    // User side: same weights on the re-derived masks, then subtract.
    std::vector<matgrid::FieldMatrix> out;
    out.reserve(weights.rows());
    for (std::size_t trow = 0; trow < weights.rows(); ++trow) {
        matgrid::FieldMatrix mask_acc(rows, cols, field);
        for (std::size_t i = 0; i < rc; ++i)
            mask_acc = matgrid::add(mask_acc, matgrid::scale(masks[i], weights.at(trow, i)));
        out.push_back(matgrid::sub(hub_blocks[trow], mask_acc));
    }
    return out;
}

} // namespace detail

using detail::Party;
using detail::Phase;

polycode::SparsePoly matdot_f_poly(const BlockList& a_blocks, std::span<const FieldMatrix> z) {
    const std::size_t p = a_blocks.blocks.size();
    const auto& first = a_blocks.blocks.front();
    polycode::SparsePoly f(first.field(), first.rows(), first.cols());
    for (std::size_t j = 0; j < p; ++j) f.add_term(j, a_blocks.blocks[j]);
    for (std::size_t t = 0; t < z.size(); ++t) f.add_term(p + t, z[t]);
    return f;
}

polycode::SparsePoly matdot_g_poly(const BlockList& b_blocks, std::span<const FieldMatrix> s) {
    const std::size_t p = b_blocks.blocks.size();
    const auto& first = b_blocks.blocks.front();
    polycode::SparsePoly g(first.field(), first.rows(), first.cols());
    for (std::size_t j = 0; j < p; ++j) g.add_term(p - 1 - j, b_blocks.blocks[j]);
    for (std::size_t t = 0; t < s.size(); ++t) g.add_term(p + t, s[t]);
    return g;
}

std::vector<ShareBundle> matdot_encode(const FieldMatrix& a, const FieldMatrix& b,
                                       const SdmmConfig& cfg, SeededPrg& prg) {
    cfg.validate();
    if (is_gasp(cfg.mode)) throw ConfigError("matdot_encode: config selects a GASP mode");
    if (a.rows() != cfg.t || a.cols() != cfg.s || b.rows() != cfg.s || b.cols() != cfg.r)
        throw DimensionMismatch("matdot_encode: inputs do not match the configured dimensions");
    PrimeField f = cfg.make_field();
    if (a.field() != f || b.field() != f) throw FieldMismatch();

    auto a_blocks = matgrid::split(a, matgrid::PartitionKind::IppColumns, cfg.p);
    auto b_blocks = matgrid::split(b, matgrid::PartitionKind::IppRows, cfg.p);
    std::vector<FieldMatrix> z, s;
    for (std::size_t i = 0; i < cfg.x; ++i)
        z.push_back(FieldMatrix::random(cfg.t, cfg.s / cfg.p, f, prg));
    for (std::size_t i = 0; i < cfg.x; ++i)
        s.push_back(FieldMatrix::random(cfg.s / cfg.p, cfg.r, f, prg));
    auto fpoly = matdot_f_poly(a_blocks, z);
    auto gpoly = matdot_g_poly(b_blocks, s);

    auto points = select_points(cfg);
    std::vector<ShareBundle> bundles;
    bundles.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i)
        bundles.push_back(ShareBundle{i, points[i], fpoly.eval(points[i]), gpoly.eval(points[i])});
    return bundles;
}

namespace {

struct PreparedRun {
    std::vector<ShareBundle> bundles;
    std::vector<std::size_t> responders;
    std::vector<FieldElement> responder_points;
    std::vector<FieldMatrix> products; // h(a_j) in responder order
    simnet::Transcript transcript;
    std::uint64_t aux = 0;
};

PreparedRun prepare_matdot(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                           const simnet::StragglerModel& straggler) {
    if (straggler.servers() != cfg.n)
        throw ConfigError("run: straggler model covers a different server count");
    PreparedRun run;
    SeededPrg noise = derive_stream(cfg.seed, kSaltNoise);
    run.bundles = matdot_encode(a, b, cfg, noise);
    detail::record_upload(run.transcript, run.bundles, run.aux);
    run.responders = straggler.fastest(cfg.recovery_threshold());
    for (std::size_t server : run.responders) {
        run.responder_points.push_back(run.bundles[server].point);
        run.products.push_back(matgrid::matmul(run.bundles[server].a_share, run.bundles[server].b_share));
    }
    return run;
}

} // namespace

RunResult matdot_coop_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                          const simnet::StragglerModel& straggler) {
    if (cfg.mode != Mode::MatdotCoop) throw ConfigError("matdot_coop_run: wrong mode");
    PreparedRun run = prepare_matdot(a, b, cfg, straggler);
    const std::size_t rc = cfg.recovery_threshold();
    auto outcome = detail::cooperative_coefficient_retrieve(run.responders, run.responder_points,
                                                            run.products, cfg.p - 1, cfg.x,
                                                            run.transcript, run.aux);
    const std::uint64_t tr = std::uint64_t(cfg.t) * cfg.r;
    const std::uint64_t groups = outcome.groups.size();
    RunResult result{std::move(outcome.sum), std::move(run.transcript), simnet::CostLedger{},
                     std::move(run.responders), std::move(outcome.groups), rc};
    result.report.upload = std::uint64_t(cfg.n) * (cfg.t * cfg.s / cfg.p + cfg.s / cfg.p * cfg.r);
    result.report.download = groups * tr;
    result.report.cooperation = (rc - groups) * tr;
    result.report.auxiliary = run.aux;
    return result;
}

RunResult matdot_enc_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                         const simnet::StragglerModel& straggler) {
    if (cfg.mode != Mode::MatdotEnc) throw ConfigError("matdot_enc_run: wrong mode");
    PreparedRun run = prepare_matdot(a, b, cfg, straggler);
    const std::size_t rc = cfg.recovery_threshold();
    PrimeField f = cfg.make_field();

    auto weight_vec = polycode::coeff_weights(run.responder_points, cfg.p - 1);
    FieldMatrix weights(1, rc, f);
    for (std::size_t i = 0; i < rc; ++i) weights.set(0, i, weight_vec[i]);
    SeededPrg key_prg = derive_stream(cfg.seed, kSaltKeys);
    auto coefficients = detail::encrypted_hub_retrieve(run.responders, run.responder_points,
                                                       run.products, weights, f, cfg.prf, key_prg,
                                                       run.transcript, run.aux, "masked_coefficient");

    const std::uint64_t tr = std::uint64_t(cfg.t) * cfg.r;
    RunResult result{std::move(coefficients.front()), std::move(run.transcript), simnet::CostLedger{},
                     std::move(run.responders), {}, rc};
    result.groups = {result.responders}; // one all-responder hub group
    result.report.upload = std::uint64_t(cfg.n) * (cfg.t * cfg.s / cfg.p + cfg.s / cfg.p * cfg.r);
    result.report.download = tr;
    result.report.cooperation = (rc - 1) * tr;
    result.report.auxiliary = run.aux;
    return result;
}

simnet::ProbeInstance matdot_probe_instance(const SdmmConfig& cfg, const FieldMatrix& a,
                                            const FieldMatrix& b) {
    cfg.validate();
    if (is_gasp(cfg.mode)) throw ConfigError("matdot_probe_instance: config selects a GASP mode");
    PrimeField f = cfg.make_field();
    auto points = select_points(cfg);
    auto a_blocks = matgrid::split(a, matgrid::PartitionKind::IppColumns, cfg.p);
    auto b_blocks = matgrid::split(b, matgrid::PartitionKind::IppRows, cfg.p);
    const std::size_t z_entries = cfg.t * (cfg.s / cfg.p);
    const std::size_t s_entries = (cfg.s / cfg.p) * cfg.r;
    simnet::ProbeInstance inst{f, cfg.n, cfg.x * (z_entries + s_entries), nullptr};
    inst.view = [cfg, f, points, a_blocks, b_blocks, z_entries,
                 s_entries](std::span<const std::uint64_t> digits, std::size_t server) {
        std::vector<FieldMatrix> z, s;
        std::size_t pos = 0;
        for (std::size_t t = 0; t < cfg.x; ++t) {
            FieldMatrix m(cfg.t, cfg.s / cfg.p, f);
            for (std::size_t i = 0; i < cfg.t; ++i)
                for (std::size_t j = 0; j < cfg.s / cfg.p; ++j) m.set_raw(i, j, digits[pos++]);
            z.push_back(std::move(m));
        }
        for (std::size_t t = 0; t < cfg.x; ++t) {
            FieldMatrix m(cfg.s / cfg.p, cfg.r, f);
            for (std::size_t i = 0; i < cfg.s / cfg.p; ++i)
                for (std::size_t j = 0; j < cfg.r; ++j) m.set_raw(i, j, digits[pos++]);
            s.push_back(std::move(m));
        }
        auto fshare = matdot_f_poly(a_blocks, z).eval(points[server]);
        auto gshare = matdot_g_poly(b_blocks, s).eval(points[server]);
        std::vector<std::uint64_t> view = fshare.values();
        view.insert(view.end(), gshare.values().begin(), gshare.values().end());
        return view;
    };
    return inst;
}

} // namespace coopsdmm::schemes
