#include "ipgaka/protocol.hpp"

#include <algorithm>

namespace ipgaka {

std::string_view protocol_name(ProtocolKind k)
{
    return k == ProtocolKind::IpgAka ? "IPG-AKA" : "EPS-AKA";
}

ProtocolKind parse_protocol(std::string_view text)
{
    if (text == "ipg" || text == "IPG-AKA" || text == "IpgAka")
        return ProtocolKind::IpgAka;
    if (text == "eps" || text == "EPS-AKA" || text == "EpsAka")
        return ProtocolKind::EpsAka;
    throw Error(ErrorCode::ConfigInvalid, "unknown protocol '" + std::string(text) + "'");
}

Key256 current_lte_key(const Credentials& c, ProtocolKind kind)
{
    if (kind == ProtocolKind::EpsAka)
        return c.static_key;
    if (!c.grid)
        throw Error(ErrorCode::ConfigInvalid, "subscriber has no grid provisioned");
    Key256 k{};
    auto derived = derive_lte_key(*c.grid, c.ks, c.feeder_seed, c.epoch);
    std::copy(derived.bits.begin(), derived.bits.end(), k.begin());
    return k;
}

void UeState::begin_session(ProtocolKind k)
{
    kind = k;
    phase = Phase::Idle;
    pending_k_asme.reset();
    k_asme.reset();
    tree.reset();
    rejected.reset();
}

void MmeState::begin_session(ProtocolKind k)
{
    kind = k;
    phase = Phase::Idle;
    imsi.reset();
    av.reset();
    rejected.reset();
    authenticated = false;
    tree.reset();
}

void HssState::confirm_success(const std::string& imsi, ProtocolKind k)
{
    auto it = subscribers.find(imsi);
    if (it != subscribers.end() && k == ProtocolKind::IpgAka)
        ++it->second.cred.epoch;
}

namespace {

Message to(Endpoint src, Endpoint dst, Payload body)
{
    return Message{src, dst, std::move(body)};
}

}  // namespace

std::vector<Message> ue_start(UeState& ue, std::uint64_t)
{
    ue.phase = UeState::Phase::AwaitAuthRequest;
    return {to(Endpoint::Ue, Endpoint::Mme, PlainIdentityMsg{ue.cred.imsi.digits()})};
}

std::vector<Message> mme_start(MmeState& mme, std::uint64_t now)
{
    ++mme.ops.signatures;
    mme.phase = MmeState::Phase::AwaitIdentity;
    auto req = sign_identity_request(mme.authority, mme.params, timestamp_of(now));
    return {to(Endpoint::Mme, Endpoint::Ue, IdentityRequestMsg{std::move(req)})};
}

std::vector<Message> step(UeState& ue, const Message& in, std::uint64_t now)
{
    using Phase = UeState::Phase;
    auto reply = [&](Payload p) { return std::vector<Message>{to(Endpoint::Ue, in.src, std::move(p))}; };
    auto reject = [&](RejectReason r) {
        if (ue.phase != Phase::Done)
            ue.rejected = r;
        ue.phase = Phase::Done;
        return reply(AuthRejectMsg{r});
    };

    if (const auto* rj = std::get_if<AuthRejectMsg>(&in.body)) {
        if (ue.phase != Phase::Idle && ue.phase != Phase::Done) {
            ue.rejected = rj->reason;
            ue.phase = Phase::Done;
        }
        return {};
    }

    if (const auto* m = std::get_if<IdentityRequestMsg>(&in.body)) {
        if (ue.kind == ProtocolKind::EpsAka) {
            // Baseline UEs answer identity requests before any security is set up.
            if (ue.phase != Phase::Idle && ue.phase != Phase::AwaitAuthRequest)
                return reject(RejectReason::ProtocolViolation);
            ue.phase = Phase::AwaitAuthRequest;
            return reply(PlainIdentityMsg{ue.cred.imsi.digits()});
        }
        if (ue.phase != Phase::Idle)
            return reject(RejectReason::ProtocolViolation);
        ++ue.ops.signatures;
        if (!signature_valid(ue.authority_public, m->req))
            return reject(RejectReason::SignatureInvalid);
        if (!timestamp_fresh(m->req.timestamp, timestamp_of(now), ue.freshness_window))
            return reject(RejectReason::StaleTimestamp);
        IdentityResponseMsg resp;
        resp.width = static_cast<std::uint16_t>(m->req.params.width());
        try {
            resp.blocks = conceal_imsi(m->req.params, ue.cred.imsi, ue.rng);
        } catch (const Error&) {
            return reject(RejectReason::ProtocolViolation);
        }
        ue.ops.exponentiations += 2 * resp.blocks.size();
        ue.phase = Phase::AwaitAuthRequest;
        return reply(std::move(resp));
    }

    if (const auto* m = std::get_if<UserAuthRequestMsg>(&in.body)) {
        if (ue.phase != Phase::AwaitAuthRequest)
            return reject(RejectReason::ProtocolViolation);
        ++ue.ops.key_derivations;
        const Key256 lte_k = ue.key_override ? *ue.key_override : current_lte_key(ue.cred, ue.kind);
        if (ue.verify_network) {
            auto v = verify_autn(lte_k, m->rand, m->autn, ue.sqn);
            if (v.status == AutnStatus::MacFailure)
                return reject(RejectReason::MacFailure);
            if (v.status == AutnStatus::SqnOutOfRange)
                return reject(RejectReason::SqnOutOfRange);
        }
        ue.pending_k_asme = derive_k_asme(lte_k, m->rand, m->autn, ue.snid);
        ue.phase = Phase::AwaitResult;
        return reply(UserAuthResponseMsg{compute_res(lte_k, m->rand)});
    }

    if (std::holds_alternative<AuthAcceptMsg>(in.body)) {
        if (ue.phase != Phase::AwaitResult)
            return reject(RejectReason::ProtocolViolation);
        ue.k_asme = ue.pending_k_asme;
        ue.tree = derive_key_tree(*ue.k_asme, 0);
        if (ue.kind == ProtocolKind::IpgAka)
            ++ue.cred.epoch;
        ue.phase = Phase::Done;
        return {};
    }

    return reject(RejectReason::ProtocolViolation);
}

std::vector<Message> step(MmeState& mme, const Message& in, std::uint64_t)
{
    using Phase = MmeState::Phase;
    auto reply = [&](Payload p) { return std::vector<Message>{to(Endpoint::Mme, in.src, std::move(p))}; };
    auto in_session = [&] { return mme.phase != Phase::Idle && mme.phase != Phase::Done; };
    auto terminate = [&](RejectReason r) {
        if (in_session())
            mme.rejected = r;
        mme.phase = Phase::Done;
    };
    auto violation = [&] {
        terminate(RejectReason::ProtocolViolation);
        return reply(AuthRejectMsg{RejectReason::ProtocolViolation});
    };

    if (const auto* rj = std::get_if<AuthRejectMsg>(&in.body)) {
        if (!in_session())
            return {};
        terminate(rj->reason);
        if (in.src == Endpoint::Hss)
            return {to(Endpoint::Mme, Endpoint::Ue, AuthRejectMsg{rj->reason})};
        return {};
    }

    auto request_vector = [&](std::string imsi) {
        mme.imsi = imsi;
        mme.phase = Phase::AwaitVector;
        return std::vector<Message>{
            to(Endpoint::Mme, Endpoint::Hss, AuthDataRequestMsg{std::move(imsi), mme.snid, NetworkType::Eutran})};
    };

    if (const auto* m = std::get_if<IdentityResponseMsg>(&in.body)) {
        if (mme.kind != ProtocolKind::IpgAka || mme.phase != Phase::AwaitIdentity || in.src != Endpoint::Ue)
            return violation();
        try {
            mme.ops.exponentiations += m->blocks.size();
            return request_vector(reveal_imsi(mme.params, mme.secret, m->blocks).digits());
        } catch (const Error&) {
            return violation();
        }
    }

    if (const auto* m = std::get_if<PlainIdentityMsg>(&in.body)) {
        // An IPG network never accepts a cleartext identity.
        if (mme.kind != ProtocolKind::EpsAka || mme.phase != Phase::Idle || in.src != Endpoint::Ue)
            return violation();
        return request_vector(m->imsi);
    }

    if (const auto* m = std::get_if<AuthDataResponseMsg>(&in.body)) {
        if (mme.phase != Phase::AwaitVector || in.src != Endpoint::Hss)
            return violation();
        mme.av = m->av;
        mme.ksi = mme.next_ksi;
        mme.next_ksi = static_cast<std::uint8_t>((mme.next_ksi + 1) % 7);  // 7 means "no key"
        mme.phase = Phase::AwaitResponse;
        return {to(Endpoint::Mme, Endpoint::Ue, UserAuthRequestMsg{m->av.rand, m->av.autn, mme.ksi})};
    }

    if (const auto* m = std::get_if<UserAuthResponseMsg>(&in.body)) {
        if (mme.phase != Phase::AwaitResponse || in.src != Endpoint::Ue)
            return violation();
        if (m->res != mme.av->xres) {
            terminate(RejectReason::ResMismatch);
            return reply(AuthRejectMsg{RejectReason::ResMismatch});
        }
        mme.authenticated = true;
        mme.tree = derive_key_tree(mme.av->k_asme, 0);
        mme.phase = Phase::Done;
        return reply(AuthAcceptMsg{mme.ksi});
    }

    return violation();
}

std::vector<Message> step(HssState& hss, const Message& in, std::uint64_t)
{
    auto reply = [&](Payload p) { return std::vector<Message>{to(Endpoint::Hss, in.src, std::move(p))}; };
    if (std::holds_alternative<AuthRejectMsg>(in.body))
        return {};
    const auto* m = std::get_if<AuthDataRequestMsg>(&in.body);
    if (!m || in.src != Endpoint::Mme)
        return reply(AuthRejectMsg{RejectReason::ProtocolViolation});

    if (std::find(hss.snid_allowlist.begin(), hss.snid_allowlist.end(), m->snid) == hss.snid_allowlist.end())
        return reply(AuthRejectMsg{RejectReason::SnidRejected});
    auto it = hss.subscribers.find(m->imsi);
    if (it == hss.subscribers.end())
        return reply(AuthRejectMsg{RejectReason::UnknownImsi});

    auto& rec = it->second;
    ++hss.ops.key_derivations;
    const Key256 lte_k = current_lte_key(rec.cred, hss.kind);
    Rand128 rand{};
    hss.rng.fill(rand);
    rec.sqn = (rec.sqn + 1) & kSqnMask;
    ++hss.ops.av_builds;
    return reply(AuthDataResponseMsg{build_auth_vector(lte_k, rec.sqn, m->snid, rand)});
}

std::size_t SessionResult::air_message_count() const
{
    return static_cast<std::size_t>(std::count_if(trace.begin(), trace.end(), [](const auto& e) { return e.air(); }));
}

std::string SessionResult::outcome() const
{
    if (authenticated)
        return "Authenticated";
    return "Rejected(" + std::string(reason_name(reason.value_or(RejectReason::DeliveryFailure))) + ")";
}

void pump(UeState& ue, MmeState& mme, HssState& hss, SimNet& net, std::size_t max_events)
{
    for (std::size_t n = 0; n < max_events; ++n) {
        auto d = net.tick();
        if (!d)
            return;
        std::optional<Payload> body;
        try {
            body = decode(d->bytes);
        } catch (const Error&) {
        }
        std::vector<Message> out;
        if (!body) {
            // Garbage ends the recipient's session like any out-of-order message.
            if (d->dst == Endpoint::Ue && ue.phase != UeState::Phase::Idle && ue.phase != UeState::Phase::Done) {
                ue.rejected = RejectReason::ProtocolViolation;
                ue.phase = UeState::Phase::Done;
            }
            if (d->dst == Endpoint::Mme && mme.phase != MmeState::Phase::Idle && mme.phase != MmeState::Phase::Done) {
                mme.rejected = RejectReason::ProtocolViolation;
                mme.phase = MmeState::Phase::Done;
            }
            out.push_back(to(d->dst, d->src, AuthRejectMsg{RejectReason::ProtocolViolation}));
        } else {
            const Message in{d->src, d->dst, std::move(*body)};
            switch (d->dst) {
            case Endpoint::Ue: out = step(ue, in, d->time); break;
            case Endpoint::Mme: out = step(mme, in, d->time); break;
            case Endpoint::Hss: out = step(hss, in, d->time); break;
            }
        }
        for (auto& m : out)
            net.send(m);
    }
}

SessionResult run_session(ProtocolKind kind, UeState& ue, MmeState& mme, HssState& hss, SimNet& net)
{
    for (auto e : {Endpoint::Ue, Endpoint::Mme, Endpoint::Hss})
        net.register_endpoint(e);
    ue.begin_session(kind);
    mme.begin_session(kind);
    hss.kind = kind;

    const std::size_t first = net.trace().size();
    auto opening = kind == ProtocolKind::IpgAka ? mme_start(mme, net.now()) : ue_start(ue, net.now());
    for (auto& m : opening)
        net.send(m);
    pump(ue, mme, hss, net);

    SessionResult r;
    r.authenticated = mme.authenticated && !mme.rejected;
    if (r.authenticated) {
        hss.confirm_success(*mme.imsi, kind);
        r.mme_k_asme = mme.av->k_asme;
        r.mme_tree = mme.tree;
    } else {
        r.reason = mme.rejected ? mme.rejected : ue.rejected ? ue.rejected : RejectReason::DeliveryFailure;
    }
    r.ue_k_asme = ue.k_asme;
    r.ue_tree = ue.tree;
    r.trace.assign(net.trace().begin() + static_cast<std::ptrdiff_t>(first), net.trace().end());
    return r;
}

SessionResult run_ipg_aka(UeState& ue, MmeState& mme, HssState& hss, SimNet& net)
{
    return run_session(ProtocolKind::IpgAka, ue, mme, hss, net);
}

SessionResult run_eps_aka(UeState& ue, MmeState& mme, HssState& hss, SimNet& net)
{
    return run_session(ProtocolKind::EpsAka, ue, mme, hss, net);
}

Metrics collect_metrics(const SimNet& net, const UeState& ue, const MmeState& mme, const HssState& hss)
{
    Metrics m = net.metrics();
    auto add = [&](Endpoint e, const OpCounters& ops) {
        if (ops != OpCounters{})
            m.entity[e].ops += ops;
    };
    add(Endpoint::Ue, ue.ops);
    add(Endpoint::Mme, mme.ops);
    add(Endpoint::Hss, hss.ops);
    return m;
}

Credentials provision_credentials(const Imsi& imsi, std::size_t grid_n, std::uint64_t seed)
{
    Drbg rng("provision", seed);
    Credentials c;
    c.imsi = imsi;
    c.grid = generate_grid(grid_n, ColumnWidths::pyramid(grid_n), rng.next_u64());
    c.ks = form_key_sequence(*c.grid, rng.next_u64());
    c.feeder_seed = rng.next_u64();
    c.epoch = 0;
    auto s = be64(seed);
    c.static_key = prf(s, "static-ltek", {bytes_of(imsi.digits())});
    return c;
}

World make_world(const WorldConfig& cfg)
{
    auto imsi = Imsi::parse(cfg.imsi);
    auto cred = provision_credentials(imsi, cfg.grid_n, cfg.seed);
    auto [params, secret] = gen_params(cfg.prime_bits, cfg.seed);

    World w{UeState{}, MmeState{}, HssState{}, SimNet(cfg.seed, cfg.air, cfg.core)};
    w.mme.authority = AuthorityKey::from_seed(cfg.seed);
    w.mme.params = params;
    w.mme.secret = secret;
    w.mme.snid = cfg.snid;

    w.ue.cred = cred;
    w.ue.snid = cfg.snid;
    w.ue.authority_public = w.mme.authority.public_key;
    w.ue.rng = Drbg("ue", cfg.seed);

    w.hss.subscribers[imsi.digits()] = HssRecord{cred, 0};
    w.hss.snid_allowlist = {cfg.snid};
    w.hss.rng = Drbg("hss", cfg.seed);

    for (auto e : {Endpoint::Ue, Endpoint::Mme, Endpoint::Hss})
        w.net.register_endpoint(e);
    return w;
}

}  // namespace ipgaka
