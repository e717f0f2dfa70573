#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ipgaka/bytes.hpp"
#include "ipgaka/imsi_crypto.hpp"
#include "ipgaka/key_hierarchy.hpp"

namespace ipgaka {

enum class Endpoint : std::uint8_t { Ue = 1, Mme = 2, Hss = 3 };
std::string_view endpoint_name(Endpoint e);

/// The UE-MME radio link. The MME-HSS link is core network.
bool on_air(Endpoint a, Endpoint b);

enum class MsgTag : std::uint8_t {
    IdentityRequest = 1,
    IdentityResponse = 2,
    PlainIdentity = 3,
    AuthDataRequest = 4,
    AuthDataResponse = 5,
    UserAuthRequest = 6,
    UserAuthResponse = 7,
    AuthAccept = 8,
    AuthReject = 9,
};
std::string_view tag_name(MsgTag t);

enum class RejectReason : std::uint8_t {
    SignatureInvalid = 1,
    StaleTimestamp,
    UnknownImsi,
    SnidRejected,
    MacFailure,
    SqnOutOfRange,
    ResMismatch,
    ProtocolViolation,
    DeliveryFailure,
};
std::string_view reason_name(RejectReason r);

enum class NetworkType : std::uint8_t { Eutran = 0, Other = 1 };

struct IdentityRequestMsg {
    SignedIdentityRequest req;
    bool operator==(const IdentityRequestMsg&) const = default;
};
struct IdentityResponseMsg {
    std::vector<ImsiCiphertext> blocks;
    std::uint16_t width = 0;  // bytes per big integer
    bool operator==(const IdentityResponseMsg&) const = default;
};
/// Baseline attach: the IMSI in the clear.
struct PlainIdentityMsg {
    std::string imsi;
    bool operator==(const PlainIdentityMsg&) const = default;
};
struct AuthDataRequestMsg {
    std::string imsi;
    std::uint32_t snid = 0;
    NetworkType network_type = NetworkType::Eutran;
    bool operator==(const AuthDataRequestMsg&) const = default;
};
struct AuthDataResponseMsg {
    AuthVector av;
    bool operator==(const AuthDataResponseMsg&) const = default;
};
struct UserAuthRequestMsg {
    Rand128 rand{};
    Autn autn{};
    std::uint8_t ksi = 0;
    bool operator==(const UserAuthRequestMsg&) const = default;
};
struct UserAuthResponseMsg {
    Res res{};
    bool operator==(const UserAuthResponseMsg&) const = default;
};
struct AuthAcceptMsg {
    std::uint8_t ksi = 0;
    bool operator==(const AuthAcceptMsg&) const = default;
};
struct AuthRejectMsg {
    RejectReason reason = RejectReason::ProtocolViolation;
    bool operator==(const AuthRejectMsg&) const = default;
};

using Payload = std::variant<IdentityRequestMsg, IdentityResponseMsg, PlainIdentityMsg, AuthDataRequestMsg,
                             AuthDataResponseMsg, UserAuthRequestMsg, UserAuthResponseMsg, AuthAcceptMsg,
                             AuthRejectMsg>;

struct Message {
    Endpoint src = Endpoint::Ue;
    Endpoint dst = Endpoint::Mme;
    Payload body;

    MsgTag tag() const;
    bool operator==(const Message&) const = default;
};

/// u32 frame length, u8 tag, then the body's fixed-width big-endian fields.
/// src and dst travel in the transport envelope, not the frame.
Bytes encode(const Payload& body);
/// Throws MalformedMessage.
Payload decode(ByteView frame);
MsgTag frame_tag(ByteView frame);

}  // namespace ipgaka
