#include "coopsdmm/schemes.hpp"
#include "schemes_internal.hpp"

namespace coopsdmm::schemes {

using detail::Party;
using detail::Phase;

const polycode::ExponentSet& gasp_exponent_set() {
    static const polycode::ExponentSet set({0, 1, 2, 3, 4, 5, 6, 8, 9, 10, 11});
    return set;
}

std::span<const std::size_t> gasp_targets() {
    static const std::size_t targets[] = {0, 1, 2, 3};
    return targets;
}

polycode::SparsePoly gasp_f_poly(const BlockList& a_blocks, std::span<const FieldMatrix> z) {
    const auto& first = a_blocks.blocks.front();
    polycode::SparsePoly f(first.field(), first.rows(), first.cols());
    f.add_term(0, a_blocks.blocks[0]);
    f.add_term(1, a_blocks.blocks[1]);
    f.add_term(4, z[0]);
    f.add_term(6, z[1]);
    return f;
}

polycode::SparsePoly gasp_g_poly(const BlockList& b_blocks, std::span<const FieldMatrix> s) {
    const auto& first = b_blocks.blocks.front();
    polycode::SparsePoly g(first.field(), first.rows(), first.cols());
    g.add_term(0, b_blocks.blocks[0]);
    g.add_term(2, b_blocks.blocks[1]);
    g.add_term(4, s[0]);
    g.add_term(5, s[1]);
    return g;
}

std::vector<ShareBundle> gasp_encode_2x2(const FieldMatrix& a, const FieldMatrix& b,
                                         const SdmmConfig& cfg, SeededPrg& prg) {
    cfg.validate();
    if (!is_gasp(cfg.mode)) throw ConfigError("gasp_encode_2x2: config selects a MatDot mode");
    if (a.rows() != cfg.t || a.cols() != cfg.s || b.rows() != cfg.s || b.cols() != cfg.r)
        throw DimensionMismatch("gasp_encode_2x2: inputs do not match the configured dimensions");
    PrimeField f = cfg.make_field();
    if (a.field() != f || b.field() != f) throw FieldMismatch();

    auto a_blocks = matgrid::split(a, matgrid::PartitionKind::OppRows, 2);
    auto b_blocks = matgrid::split(b, matgrid::PartitionKind::OppCols, 2);
    std::vector<FieldMatrix> z, s;
    for (int i = 0; i < 2; ++i) z.push_back(FieldMatrix::random(cfg.t / 2, cfg.s, f, prg));
    for (int i = 0; i < 2; ++i) s.push_back(FieldMatrix::random(cfg.s, cfg.r / 2, f, prg));
    auto fpoly = gasp_f_poly(a_blocks, z);
    auto gpoly = gasp_g_poly(b_blocks, s);

    auto points = select_points(cfg);
    std::vector<ShareBundle> bundles;
    bundles.reserve(cfg.n);
    for (std::size_t i = 0; i < cfg.n; ++i)
        bundles.push_back(ShareBundle{i, points[i], fpoly.eval(points[i]), gpoly.eval(points[i])});
    return bundles;
}

namespace {

struct PreparedGasp {
    std::vector<std::size_t> responders;
    std::vector<FieldElement> responder_points;
    std::vector<FieldMatrix> products; // h(a_j), (t/2) x (r/2)
    simnet::Transcript transcript;
    std::uint64_t aux = 0;
};

PreparedGasp prepare_gasp(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                          const simnet::StragglerModel& straggler) {
    if (straggler.servers() != cfg.n)
        throw ConfigError("run: straggler model covers a different server count");
    PreparedGasp run;
    SeededPrg noise = derive_stream(cfg.seed, kSaltNoise);
    auto bundles = gasp_encode_2x2(a, b, cfg, noise);
    detail::record_upload(run.transcript, bundles, run.aux);
    run.responders = straggler.fastest(cfg.recovery_threshold());
    for (std::size_t server : run.responders) {
        run.responder_points.push_back(bundles[server].point);
        run.products.push_back(matgrid::matmul(bundles[server].a_share, bundles[server].b_share));
    }
    return run;
}

FieldMatrix assemble_gasp_product(std::span<const FieldMatrix> coefficients) {
    // Coefficients 0..3 are A0B0, A1B0, A0B1, A1B1.
    return matgrid::assemble_grid({{coefficients[0], coefficients[2]},
                                   {coefficients[1], coefficients[3]}});
}

std::uint64_t upload_cost(const SdmmConfig& cfg) {
    return std::uint64_t(cfg.n) * (cfg.t * cfg.s / 2 + cfg.s * cfg.r / 2);
}

} // namespace

RunResult gasp_plain_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                         const simnet::StragglerModel& straggler) {
    if (cfg.mode != Mode::GaspPlain) throw ConfigError("gasp_plain_run: wrong mode");
    PreparedGasp run = prepare_gasp(a, b, cfg, straggler);
    const std::size_t rc = cfg.recovery_threshold();
    detail::record_identities(run.transcript, run.responders, run.aux);
    for (std::size_t i = 0; i < rc; ++i)
        run.transcript.record(Phase::Decode, Party::server(run.responders[i]), Party::user(), "h_share",
                              run.products[i].size());
    FieldMatrix weights = polycode::decode_rows(run.responder_points, gasp_exponent_set(), gasp_targets());
    std::vector<FieldMatrix> coefficients;
    for (std::size_t t = 0; t < 4; ++t) {
        FieldMatrix acc(cfg.t / 2, cfg.r / 2, run.products[0].field());
        for (std::size_t i = 0; i < rc; ++i)
            acc = matgrid::add(acc, matgrid::scale(run.products[i], weights.at(t, i)));
        coefficients.push_back(std::move(acc));
    }
    const std::uint64_t tr = std::uint64_t(cfg.t) * cfg.r;
    RunResult result{assemble_gasp_product(coefficients), std::move(run.transcript),
                     simnet::CostLedger{}, std::move(run.responders), {}, rc};
    result.report.upload = upload_cost(cfg);
    result.report.download = rc * tr / 4;
    result.report.cooperation = 0;
    result.report.auxiliary = run.aux;
    return result;
}

RunResult gasp_coop_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                        const simnet::StragglerModel& straggler) {
    if (cfg.mode != Mode::GaspCoop) throw ConfigError("gasp_coop_run: wrong mode");
    PreparedGasp run = prepare_gasp(a, b, cfg, straggler);
    const std::size_t rc = cfg.recovery_threshold();
    detail::record_identities(run.transcript, run.responders, run.aux);
    for (std::size_t server : run.responders) {
        run.transcript.record(Phase::Auxiliary, Party::user(), Party::server(server), "responder_points",
                              rc);
        run.aux += rc;
    }
    FieldMatrix weights = polycode::decode_rows(run.responder_points, gasp_exponent_set(), gasp_targets());
    auto groups = group_plan(run.responders, cfg.x);
    std::vector<FieldMatrix> coefficients(4, FieldMatrix(cfg.t / 2, cfg.r / 2, run.products[0].field()));
    std::size_t base = 0;
    for (const auto& group : groups) {
        std::size_t rep = group.front();
        for (std::size_t t = 0; t < 4; ++t) {
            FieldMatrix answer = matgrid::scale(run.products[base], weights.at(t, base));
            for (std::size_t k = 1; k < group.size(); ++k)
                answer = matgrid::add(answer,
                                      matgrid::scale(run.products[base + k], weights.at(t, base + k)));
            coefficients[t] = matgrid::add(coefficients[t], answer);
        }
        // One message per member carrying its four weighted blocks.
        for (std::size_t k = 1; k < group.size(); ++k)
            run.transcript.record(Phase::Cooperate, Party::server(group[k]), Party::server(rep),
                                  "weighted_blocks", 4 * run.products[0].size());
        run.transcript.record(Phase::Decode, Party::server(rep), Party::user(), "group_blocks",
                              4 * run.products[0].size());
        base += group.size();
    }
    const std::uint64_t tr = std::uint64_t(cfg.t) * cfg.r;
    const std::uint64_t group_count = groups.size();
    RunResult result{assemble_gasp_product(coefficients), std::move(run.transcript),
                     simnet::CostLedger{}, std::move(run.responders), std::move(groups), rc};
    result.report.upload = upload_cost(cfg);
    result.report.download = group_count * tr;
    result.report.cooperation = (rc - group_count) * tr;
    result.report.auxiliary = run.aux;
    return result;
}

RunResult gasp_enc_run(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                       const simnet::StragglerModel& straggler) {
    if (cfg.mode != Mode::GaspEnc) throw ConfigError("gasp_enc_run: wrong mode");
    PreparedGasp run = prepare_gasp(a, b, cfg, straggler);
    const std::size_t rc = cfg.recovery_threshold();
    PrimeField f = cfg.make_field();
    FieldMatrix weights = polycode::decode_rows(run.responder_points, gasp_exponent_set(), gasp_targets());
    SeededPrg key_prg = derive_stream(cfg.seed, kSaltKeys);
    auto coefficients = detail::encrypted_hub_retrieve(run.responders, run.responder_points,
                                                       run.products, weights, f, cfg.prf, key_prg,
                                                       run.transcript, run.aux, "masked_blocks");
    const std::uint64_t tr = std::uint64_t(cfg.t) * cfg.r;
    RunResult result{assemble_gasp_product(coefficients), std::move(run.transcript),
                     simnet::CostLedger{}, std::move(run.responders), {}, rc};
    result.groups = {result.responders};
    result.report.upload = upload_cost(cfg);
    result.report.download = tr;
    result.report.cooperation = (rc - 1) * tr / 4;
    result.report.auxiliary = run.aux;
    return result;
}

RunResult run_scheme(const FieldMatrix& a, const FieldMatrix& b, const SdmmConfig& cfg,
                     const simnet::StragglerModel& straggler) {
    switch (cfg.mode) {
        case Mode::MatdotCoop: return matdot_coop_run(a, b, cfg, straggler);
        case Mode::MatdotEnc: return matdot_enc_run(a, b, cfg, straggler);
        case Mode::GaspPlain: return gasp_plain_run(a, b, cfg, straggler);
        case Mode::GaspCoop: return gasp_coop_run(a, b, cfg, straggler);
        case Mode::GaspEnc: return gasp_enc_run(a, b, cfg, straggler);
    }
    throw ConfigError("run_scheme: unknown mode");
}

} // namespace coopsdmm::schemes
