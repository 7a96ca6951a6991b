#include <numeric>

#include "coopsdmm/schemes.hpp"
#include "schemes_internal.hpp"

namespace coopsdmm::schemes {

using detail::Party;
using detail::Phase;

void PirConfig::validate() const {
    if (files == 0 || stripe == 0 || record_len == 0)
        throw ConfigError("pir config: file shape must be positive");
    if (x == 0) throw ConfigError("pir config: the scheme requires X >= 1");
    if (p == 0 || data_rows() % p != 0) throw IndivisibleDimension("pir config: p must divide s");
    if (!field::is_prime_u64(q)) throw ConfigError("pir config: q must be prime");
    if (q <= n + 1) throw FieldTooSmall("pir config: need q > N + 1");
    if (n < recovery_threshold())
        throw ConfigError("pir config: N must be at least the recovery threshold");
}

PrimeField PirConfig::make_field() const { return PrimeField(q); }

namespace {

SdmmConfig as_sdmm(const PirConfig& cfg) {
    SdmmConfig s;
    s.t = cfg.stripe;
    s.s = cfg.data_rows();
    s.r = cfg.record_len;
    s.p = cfg.p;
    s.x = cfg.x;
    s.n = cfg.n;
    s.q = cfg.q;
    s.seed = cfg.seed;
    s.mode = Mode::MatdotCoop;
    return s;
}

} // namespace

FieldMatrix pir_query_matrix(const PirConfig& cfg, std::size_t index) {
    if (index >= cfg.files) throw ConfigError("pir: file index out of range");
    PrimeField f = cfg.make_field();
    FieldMatrix query(cfg.stripe, cfg.data_rows(), f);
    for (std::size_t a = 0; a < cfg.stripe; ++a)
        query.set_raw(a, index * cfg.stripe + a, 1);
    return query;
}

PirSetup pir_setup(const FieldMatrix& files_matrix, const PirConfig& cfg, SeededPrg& prg) {
    cfg.validate();
    PrimeField f = cfg.make_field();
    if (files_matrix.field() != f) throw FieldMismatch();
    if (files_matrix.rows() != cfg.data_rows() || files_matrix.cols() != cfg.record_len)
        throw DimensionMismatch("pir_setup: file matrix must be s x r");

    auto b_blocks = matgrid::split(files_matrix, matgrid::PartitionKind::IppRows, cfg.p);
    std::vector<FieldMatrix> s;
    for (std::size_t i = 0; i < cfg.x; ++i)
        s.push_back(FieldMatrix::random(cfg.data_rows() / cfg.p, cfg.record_len, f, prg));
    auto gpoly = matdot_g_poly(b_blocks, s);

    PirSetup setup;
    setup.points = select_points(as_sdmm(cfg));
    for (std::size_t i = 0; i < cfg.n; ++i) {
        setup.stored.push_back(gpoly.eval(setup.points[i]));
        setup.transcript.record(Phase::Upload, Party::user(), Party::server(i), "stored_share",
                                setup.stored.back().size());
        setup.transcript.record(Phase::Auxiliary, Party::user(), Party::server(i), "eval_point", 1);
    }
    return setup;
}

PirResult pir_retrieve(const PirSetup& setup, std::size_t index, const PirConfig& cfg,
                       const simnet::StragglerModel& straggler, SeededPrg& prg) {
    cfg.validate();
    if (setup.stored.size() != cfg.n || setup.points.size() != cfg.n)
        throw ConfigError("pir_retrieve: setup does not match the config");
    if (straggler.servers() != cfg.n)
        throw ConfigError("pir_retrieve: straggler model covers a different server count");
    PrimeField f = cfg.make_field();
    const std::size_t rc = cfg.recovery_threshold();

    FieldMatrix query = pir_query_matrix(cfg, index);
    auto a_blocks = matgrid::split(query, matgrid::PartitionKind::IppColumns, cfg.p);
    std::vector<FieldMatrix> z;
    for (std::size_t i = 0; i < cfg.x; ++i)
        z.push_back(FieldMatrix::random(cfg.stripe, cfg.data_rows() / cfg.p, f, prg));
    auto fpoly = matdot_f_poly(a_blocks, z);

    PirResult result;
    result.recovery_threshold = rc;
    std::uint64_t aux = 0;
    for (std::size_t i = 0; i < cfg.n; ++i)
        result.transcript.record(Phase::Upload, Party::user(), Party::server(i), "query_share",
                                 cfg.stripe * (cfg.data_rows() / cfg.p));

    result.responders = straggler.fastest(rc);
    std::vector<FieldElement> responder_points;
    std::vector<FieldMatrix> products;
    for (std::size_t server : result.responders) {
        responder_points.push_back(setup.points[server]);
        products.push_back(matgrid::matmul(fpoly.eval(setup.points[server]), setup.stored[server]));
    }
    auto outcome = detail::cooperative_coefficient_retrieve(result.responders, responder_points,
                                                            products, cfg.p - 1, cfg.x,
                                                            result.transcript, aux);
    result.groups = std::move(outcome.groups);
    result.file = std::move(outcome.sum);

    const std::uint64_t file_size = std::uint64_t(cfg.stripe) * cfg.record_len;
    const std::uint64_t download = result.groups.size() * file_size;
    const std::uint64_t g = std::gcd(file_size, download);
    result.rate_num = file_size / g;
    result.rate_den = download / g;
    result.report.upload = std::uint64_t(cfg.n) * cfg.stripe * (cfg.data_rows() / cfg.p);
    result.report.download = download;
    result.report.cooperation = (rc - result.groups.size()) * file_size;
    result.report.auxiliary = aux;
    return result;
}

simnet::ProbeInstance pir_query_probe_instance(const PirConfig& cfg, std::size_t index) {
    cfg.validate();
    PrimeField f = cfg.make_field();
    auto points = select_points(as_sdmm(cfg));
    auto a_blocks = matgrid::split(pir_query_matrix(cfg, index), matgrid::PartitionKind::IppColumns, cfg.p);
    const std::size_t z_entries = cfg.stripe * (cfg.data_rows() / cfg.p);
    simnet::ProbeInstance inst{f, cfg.n, cfg.x * z_entries, nullptr};
    const std::size_t rows = cfg.stripe, cols = cfg.data_rows() / cfg.p;
    const std::size_t x = cfg.x;
    inst.view = [f, points, a_blocks, rows, cols, x](std::span<const std::uint64_t> digits,
                                                     std::size_t server) {
        std::vector<FieldMatrix> z;
        std::size_t pos = 0;
        for (std::size_t t = 0; t < x; ++t) {
            FieldMatrix m(rows, cols, f);
            for (std::size_t i = 0; i < rows; ++i)
                for (std::size_t j = 0; j < cols; ++j) m.set_raw(i, j, digits[pos++]);
            z.push_back(std::move(m));
        }
        return matdot_f_poly(a_blocks, z).eval(points[server]).values();
    };
    return inst;
}

} // namespace coopsdmm::schemes
