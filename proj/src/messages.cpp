#include "ipgaka/messages.hpp"

#include <algorithm>

namespace ipgaka {

std::string_view endpoint_name(Endpoint e)
{
    switch (e) {
    case Endpoint::Ue: return "UE";
    case Endpoint::Mme: return "MME";
    case Endpoint::Hss: return "HSS";
    }
    return "?";
}

bool on_air(Endpoint a, Endpoint b)
{
    return (a == Endpoint::Ue && b == Endpoint::Mme) || (a == Endpoint::Mme && b == Endpoint::Ue);
}

std::string_view tag_name(MsgTag t)
{
    switch (t) {
    case MsgTag::IdentityRequest: return "IdentityRequest";
    case MsgTag::IdentityResponse: return "IdentityResponse";
    case MsgTag::PlainIdentity: return "PlainIdentity";
    case MsgTag::AuthDataRequest: return "AuthDataRequest";
    case MsgTag::AuthDataResponse: return "AuthDataResponse";
    case MsgTag::UserAuthRequest: return "UserAuthRequest";
    case MsgTag::UserAuthResponse: return "UserAuthResponse";
    case MsgTag::AuthAccept: return "AuthAccept";
    case MsgTag::AuthReject: return "AuthReject";
    }
    return "?";
}

std::string_view reason_name(RejectReason r)
{
    switch (r) {
    case RejectReason::SignatureInvalid: return "SignatureInvalid";
    case RejectReason::StaleTimestamp: return "StaleTimestamp";
    case RejectReason::UnknownImsi: return "UnknownImsi";
    case RejectReason::SnidRejected: return "SnidRejected";
    case RejectReason::MacFailure: return "MacFailure";
    case RejectReason::SqnOutOfRange: return "SqnOutOfRange";
    case RejectReason::ResMismatch: return "ResMismatch";
    case RejectReason::ProtocolViolation: return "ProtocolViolation";
    case RejectReason::DeliveryFailure: return "DeliveryFailure";
    }
    return "?";
}

MsgTag Message::tag() const
{
    return static_cast<MsgTag>(body.index() + 1);
}

namespace {

template <std::size_t N>
void put(ByteWriter& w, const std::array<std::uint8_t, N>& a)
{
    w.raw(a);
}

template <std::size_t N>
void get(ByteReader& r, std::array<std::uint8_t, N>& a)
{
    auto b = r.raw(N);
    std::copy(b.begin(), b.end(), a.begin());
}

void put_big(ByteWriter& w, const mpz_class& v, std::size_t width)
{
    w.blob16(encode_big(v, width));
}

mpz_class get_big(ByteReader& r, std::size_t width)
{
    auto b = r.blob16();
    if (b.size() != width)
        throw Error(ErrorCode::MalformedMessage, "big integer field has the wrong width");
    return decode_big(b);
}

void put_imsi(ByteWriter& w, const std::string& imsi)
{
    if (imsi.size() != kImsiDigits)
        throw Error(ErrorCode::MalformedMessage, "IMSI field must be 15 digits");
    w.raw(bytes_of(imsi));
}

std::string get_imsi(ByteReader& r)
{
    auto b = r.raw(kImsiDigits);
    std::string s(b.begin(), b.end());
    if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw Error(ErrorCode::MalformedMessage, "IMSI field is not decimal");
    return s;
}

struct Encoder {
    ByteWriter& w;

    void operator()(const IdentityRequestMsg& m)
    {
        const auto& p = m.req.params;
        const std::size_t width = p.width();
        w.u16(static_cast<std::uint16_t>(width));
        put_big(w, p.p, width);
        put_big(w, p.alpha, width);
        put_big(w, p.beta, width);
        put_big(w, p.n, width);
        w.u64(m.req.timestamp);
        put(w, m.req.signature);
    }
    void operator()(const IdentityResponseMsg& m)
    {
        w.u16(m.width);
        w.u8(static_cast<std::uint8_t>(m.blocks.size()));
        for (const auto& b : m.blocks) {
            w.u32(b.block_index);
            put_big(w, b.r, m.width);
            put_big(w, b.t, m.width);
        }
    }
    void operator()(const PlainIdentityMsg& m) { put_imsi(w, m.imsi); }
    void operator()(const AuthDataRequestMsg& m)
    {
        put_imsi(w, m.imsi);
        w.u32(m.snid);
        w.u8(static_cast<std::uint8_t>(m.network_type));
    }
    void operator()(const AuthDataResponseMsg& m)
    {
        put(w, m.av.rand);
        put(w, m.av.autn);
        put(w, m.av.xres);
        put(w, m.av.k_asme);
    }
    void operator()(const UserAuthRequestMsg& m)
    {
        put(w, m.rand);
        put(w, m.autn);
        w.u8(m.ksi);
    }
    void operator()(const UserAuthResponseMsg& m) { put(w, m.res); }
    void operator()(const AuthAcceptMsg& m) { w.u8(m.ksi); }
    void operator()(const AuthRejectMsg& m) { w.u8(static_cast<std::uint8_t>(m.reason)); }
};

}  // namespace

Bytes encode(const Payload& body)
{
    ByteWriter w;
    std::visit(Encoder{w}, body);
    const Bytes& fields = w.bytes();
    ByteWriter frame;
    frame.u32(static_cast<std::uint32_t>(fields.size() + 1));
    frame.u8(static_cast<std::uint8_t>(body.index() + 1));
    frame.raw(fields);
    return std::move(frame).take();
}

MsgTag frame_tag(ByteView frame)
{
    if (frame.size() < 5)
        throw Error(ErrorCode::MalformedMessage, "frame shorter than its header");
    return static_cast<MsgTag>(frame[4]);
}

Payload decode(ByteView frame)
{
    ByteReader r(frame);
    const std::uint32_t len = r.u32();
    if (len != r.remaining())
        throw Error(ErrorCode::MalformedMessage, "frame length mismatch");
    const std::uint8_t tag = r.u8();
    Payload out;
    switch (static_cast<MsgTag>(tag)) {
    case MsgTag::IdentityRequest: {
        IdentityRequestMsg m;
        const std::size_t width = r.u16();
        auto& p = m.req.params;
        p.p = get_big(r, width);
        p.alpha = get_big(r, width);
        p.beta = get_big(r, width);
        p.n = get_big(r, width);
        if (p.p == 0 || p.width() != width)
            throw Error(ErrorCode::MalformedMessage, "modulus does not match its field width");
        m.req.timestamp = r.u64();
        get(r, m.req.signature);
        out = std::move(m);
        break;
    }
    case MsgTag::IdentityResponse: {
        IdentityResponseMsg m;
        m.width = r.u16();
        const std::size_t count = r.u8();
        for (std::size_t i = 0; i < count; ++i) {
            ImsiCiphertext c;
            c.block_index = r.u32();
            c.r = get_big(r, m.width);
            c.t = get_big(r, m.width);
            m.blocks.push_back(std::move(c));
        }
        out = std::move(m);
        break;
    }
    case MsgTag::PlainIdentity: out = PlainIdentityMsg{get_imsi(r)}; break;
    case MsgTag::AuthDataRequest: {
        AuthDataRequestMsg m;
        m.imsi = get_imsi(r);
        m.snid = r.u32();
        const auto nt = r.u8();
        if (nt > 1)
            throw Error(ErrorCode::MalformedMessage, "unknown network type");
        m.network_type = static_cast<NetworkType>(nt);
        out = std::move(m);
        break;
    }
    case MsgTag::AuthDataResponse: {
        AuthDataResponseMsg m;
        get(r, m.av.rand);
        get(r, m.av.autn);
        get(r, m.av.xres);
        get(r, m.av.k_asme);
        out = m;
        break;
    }
    case MsgTag::UserAuthRequest: {
        UserAuthRequestMsg m;
        get(r, m.rand);
        get(r, m.autn);
        m.ksi = r.u8();
        out = m;
        break;
    }
    case MsgTag::UserAuthResponse: {
        UserAuthResponseMsg m;
        get(r, m.res);
        out = m;
        break;
    }
    case MsgTag::AuthAccept: out = AuthAcceptMsg{r.u8()}; break;
    case MsgTag::AuthReject: {
        const auto reason = r.u8();
        if (reason < 1 || reason > static_cast<std::uint8_t>(RejectReason::DeliveryFailure))
            throw Error(ErrorCode::MalformedMessage, "unknown reject reason");
        out = AuthRejectMsg{static_cast<RejectReason>(reason)};
        break;
    }
    default: throw Error(ErrorCode::MalformedMessage, "unknown tag " + std::to_string(tag));
    }
    r.expect_end();
    return out;
}

}  // namespace ipgaka
