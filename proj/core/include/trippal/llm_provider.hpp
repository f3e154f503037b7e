#pragma once

#include "trippal/providers.hpp"

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace trippal {

struct ChatMessage {
    std::string role;  // "user" or "assistant"
    std::string content;
};

/// One chat-completion round trip. Implementations throw
/// Error(ProviderUnavailable) on transport failures.
class ChatTransport {
public:
    virtual ~ChatTransport() = default;
    virtual std::string complete(const std::vector<ChatMessage> &messages) = 0;
};

struct EndpointConfig {
    std::string url;  // e.g. https://api.openai.com/v1/chat/completions
    std::string api_key;
    std::string model = "gpt-4";
    double temperature = 0.0;
    int timeout_seconds = 120;

    /// Reads TRIP_LLM_ENDPOINT, TRIP_LLM_KEY and TRIP_LLM_MODEL.
    /// Throws Error(ProviderUnavailable) when the endpoint is not set.
    static EndpointConfig from_env();
};

/// POSTs an OpenAI-style chat-completions request and returns
/// choices[0].message.content.
class HttpChatTransport : public ChatTransport {
public:
    explicit HttpChatTransport(EndpointConfig config);
    std::string complete(const std::vector<ChatMessage> &messages) override;

private:
    EndpointConfig config_;
};

struct TranscriptRecord {
    std::string prompt;
    std::string response;

    friend bool operator==(const TranscriptRecord &, const TranscriptRecord &) = default;
};

using Transcript = std::vector<TranscriptRecord>;

Transcript parse_transcript(std::string_view json_text);
std::string write_transcript(const Transcript &transcript);
Transcript read_transcript(const std::filesystem::path &path);

/// Plays back recorded responses in order. With strict prompts each request's
/// last user message must equal the recorded prompt.
class ReplayTransport : public ChatTransport {
public:
    explicit ReplayTransport(Transcript transcript, bool strict_prompts = true);
    std::string complete(const std::vector<ChatMessage> &messages) override;

    std::size_t remaining() const { return transcript_.size() - next_; }

private:
    Transcript transcript_;
    std::size_t next_ = 0;
    bool strict_;
};

/// Forwards to another transport and keeps every exchange.
class RecordingTransport : public ChatTransport {
public:
    explicit RecordingTransport(ChatTransport &inner) : inner_(inner) {}
    std::string complete(const std::vector<ChatMessage> &messages) override;

    const Transcript &transcript() const { return transcript_; }

private:
    ChatTransport &inner_;
    Transcript transcript_;
};

struct LlmPromptOptions {
    int rating_scale = 5;
    int max_retries = 2;
};

std::string poi_list_prompt(const ProviderRequest &request);
std::string rating_prompt(int rating_scale);
std::string visit_time_prompt();
std::string travel_time_prompt(const ProviderRequest &request);

/// Four dependent prompts (POIs, ratings, visit times, travel times); every
/// reply is kept in the context of the following calls. A reply that cannot be
/// parsed is requested again up to max_retries times before a
/// ProviderParseError carrying the reply is thrown.
class LlmProvider : public TravelInfoProvider {
public:
    explicit LlmProvider(ChatTransport &transport, LlmPromptOptions options = {});
    RawTravelInfo fetch(const ProviderRequest &request) override;

private:
    ChatTransport &transport_;
    LlmPromptOptions options_;
};

/// Parses the four replies the way LlmProvider does, without any transport.
RawTravelInfo raw_from_replies(const ProviderRequest &request, int rating_scale,
                               const std::string &poi_reply, const std::string &rating_reply,
                               const std::string &visit_reply, const std::string &travel_reply);

} // namespace trippal
