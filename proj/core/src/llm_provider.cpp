#include "trippal/llm_provider.hpp"

#include "trippal/errors.hpp"
#include "trippal/task_io.hpp"

#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <functional>
#include <set>

namespace trippal {

using json = nlohmann::json;

EndpointConfig EndpointConfig::from_env() {
    auto env = [](const char *name) -> std::string {
        const char *value = std::getenv(name);
        return value == nullptr ? std::string() : std::string(value);
    };
    EndpointConfig config;
    config.url = env("TRIP_LLM_ENDPOINT");
    config.api_key = env("TRIP_LLM_KEY");
    if (std::string model = env("TRIP_LLM_MODEL"); !model.empty())
        config.model = model;
    if (config.url.empty())
        throw Error(ErrorCode::ProviderUnavailable, "TRIP_LLM_ENDPOINT is not set");
    return config;
}

HttpChatTransport::HttpChatTransport(EndpointConfig config) : config_(std::move(config)) {
}

std::string HttpChatTransport::complete(const std::vector<ChatMessage> &messages) {
    const std::string &url = config_.url;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorCode::ProviderUnavailable, "endpoint '" + url + "' has no scheme");
    auto path_start = url.find('/', scheme_end + 3);
    std::string origin = path_start == std::string::npos ? url : url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    json body = {{"model", config_.model}, {"temperature", config_.temperature}};
    body["messages"] = json::array();
    for (const ChatMessage &message : messages)
        body["messages"].push_back({{"role", message.role}, {"content", message.content}});

    httplib::Result result{nullptr, httplib::Error::Unknown};
    try {
        httplib::Client client(origin);
        if (!client.is_valid())
            throw Error(ErrorCode::ProviderUnavailable,
                        "cannot create a client for '" + origin + "' (TLS support missing?)");
        client.set_connection_timeout(config_.timeout_seconds, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!config_.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config_.api_key);
        result = client.Post(path, headers, body.dump(), "application/json");
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw Error(ErrorCode::ProviderUnavailable, std::string("request failed: ") + e.what());
    }
    if (!result)
        throw Error(ErrorCode::ProviderUnavailable,
                    "request to '" + url + "' failed: " + httplib::to_string(result.error()));
    if (result->status != 200)
        throw Error(ErrorCode::ProviderUnavailable,
                    "endpoint answered HTTP " + std::to_string(result->status));
    if (result->body.empty())
        throw Error(ErrorCode::ProviderUnavailable, "endpoint returned an empty body");

    std::string content;
    try {
        json reply = json::parse(result->body);
        content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ProviderUnavailable,
                    std::string("endpoint reply is not a chat completion: ") + e.what());
    }
    if (content.empty())
        throw Error(ErrorCode::ProviderUnavailable, "endpoint returned an empty reply");
    return content;
}

Transcript parse_transcript(std::string_view json_text) {
    Transcript transcript;
    try {
        json doc = json::parse(json_text);
        if (!doc.is_array())
            throw ParseError("transcript must be a JSON array");
        for (const json &record : doc)
            transcript.push_back(TranscriptRecord{record.at("prompt").get<std::string>(),
                                                  record.at("response").get<std::string>()});
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed transcript: ") + e.what());
    }
    return transcript;
}

std::string write_transcript(const Transcript &transcript) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const TranscriptRecord &record : transcript)
        doc.push_back({{"prompt", record.prompt}, {"response", record.response}});
    return doc.dump(2) + "\n";
}

Transcript read_transcript(const std::filesystem::path &path) {
    return parse_transcript(read_text_file(path));
}

ReplayTransport::ReplayTransport(Transcript transcript, bool strict_prompts)
    : transcript_(std::move(transcript)), strict_(strict_prompts) {
}

std::string ReplayTransport::complete(const std::vector<ChatMessage> &messages) {
    if (next_ >= transcript_.size())
        throw Error(ErrorCode::ProviderUnavailable, "transcript exhausted");
    const TranscriptRecord &record = transcript_[next_++];
    if (strict_ && (messages.empty() || messages.back().content != record.prompt))
        throw Error(ErrorCode::ProviderUnavailable,
                    "request " + std::to_string(next_) + " does not match the recorded prompt");
    return record.response;
}

std::string RecordingTransport::complete(const std::vector<ChatMessage> &messages) {
    std::string reply = inner_.complete(messages);
    transcript_.push_back(TranscriptRecord{messages.empty() ? "" : messages.back().content, reply});
    return reply;
}

std::string poi_list_prompt(const ProviderRequest &request) {
    return "Give me a list of " + std::to_string(request.n_pois) +
           " tourist points of interest by their full name for the city of " + request.city +
           ". Present it as a comma separated list of places like placeA, place B, place C. "
           "No numbers.";
}

std::string rating_prompt(int rating_scale) {
    return "Given, this information, for the places mentioned, assign a number from 1 to " +
           std::to_string(rating_scale) +
           " based on how popular they are for tourists. For example location one = 2 \n"
           " location two = 4 \n location three = 1 ... put each entry on a new line";
}

std::string visit_time_prompt() {
    return "For the places and popularity mentioned, assign the amount of time one should spend "
           "at each of the locations. The amount of time should be in chunks of 15 minutes, and "
           "give the time in minutes not hours.For example location one = 15 minutes \n"
           " location two = 30 minutes \n location three = 75 minutes ... put each entry on a "
           "new line";
}

std::string travel_time_prompt(const ProviderRequest &request) {
    return "For every ordered pair of the places mentioned, give the travel time in minutes from "
           "the first place to the second one. Put each entry on a new line, formatted as: "
           "Travel time from place A, " +
           request.city + " to place B, " + request.city + " is 10 mins";
}

namespace {

std::optional<std::string> match_name(std::string_view mention,
                                      const std::vector<std::string> &names) {
    std::string folded;
    try {
        folded = fold_name(mention);
    } catch (const Error &) {
        return std::nullopt;
    }
    std::optional<std::string> prefix_match;
    bool ambiguous = false;
    for (const std::string &name : names) {
        std::string candidate = fold_name(name);
        if (candidate == folded)
            return name;
        if (candidate.starts_with(folded)) {
            ambiguous = prefix_match.has_value();
            prefix_match = name;
        }
    }
    return ambiguous ? std::nullopt : prefix_match;
}

std::vector<std::string> read_names(const ProviderRequest &request, const std::string &reply) {
    std::vector<std::string> names = parse_poi_list(reply);
    if (request.n_pois > 0 && names.size() > static_cast<std::size_t>(request.n_pois))
        names.resize(static_cast<std::size_t>(request.n_pois));
    std::set<std::string> ids;
    for (const std::string &name : names) {
        if (!ids.insert(fold_name(name)).second)
            throw ParseError("place '" + name + "' listed twice");
    }
    return names;
}

std::map<std::string, int> read_per_place(const std::vector<std::string> &names,
                                          const std::string &reply, std::string_view suffix,
                                          const char *what) {
    std::map<std::string, int> values;
    for (auto &[mention, value] : parse_kv_lines(reply, suffix)) {
        if (auto name = match_name(mention, names))
            values[*name] = value;
    }
    for (const std::string &name : names) {
        if (!values.contains(name))
            throw ParseError(std::string("reply has no ") + what + " for '" + name + "'");
    }
    return values;
}

std::map<std::string, int> read_ratings(const std::vector<std::string> &names, int scale,
                                        const std::string &reply) {
    std::map<std::string, int> ratings = read_per_place(names, reply, {}, "rating");
    for (const auto &[name, value] : ratings) {
        if (value < 1 || value > scale)
            throw ParseError("rating of '" + name + "' outside [1, " + std::to_string(scale) + "]");
    }
    return ratings;
}

std::map<std::string, int> read_visits(const std::vector<std::string> &names,
                                       const std::string &reply) {
    std::map<std::string, int> visits = read_per_place(names, reply, "minutes", "visit time");
    for (auto &[name, value] : visits) {
        if (value <= 0)
            throw ParseError("visit time of '" + name + "' must be positive");
        value = (value + 14) / 15 * 15;
    }
    return visits;
}

std::map<std::pair<std::string, std::string>, int>
read_travel(const std::vector<std::string> &names, const std::string &reply) {
    std::map<std::pair<std::string, std::string>, int> travel;
    for (auto &[pair, minutes] : parse_travel_lines(reply)) {
        auto from = match_name(pair.first, names);
        auto to = match_name(pair.second, names);
        if (from && to && *from != *to)
            travel[{*from, *to}] = minutes;
    }
    for (const std::string &from : names) {
        for (const std::string &to : names) {
            if (from != to && !travel.contains({from, to}))
                throw ParseError("reply has no travel time from '" + from + "' to '" + to + "'");
        }
    }
    return travel;
}

} // namespace

LlmProvider::LlmProvider(ChatTransport &transport, LlmPromptOptions options)
    : transport_(transport), options_(options) {
}

RawTravelInfo LlmProvider::fetch(const ProviderRequest &request) {
    std::vector<ChatMessage> context;

    auto ask = [&](const std::string &prompt, const std::function<void(const std::string &)> &parse) {
        std::string last_reply;
        std::string last_error;
        for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
            std::vector<ChatMessage> messages = context;
            messages.push_back(ChatMessage{"user", prompt});
            std::string reply = transport_.complete(messages);
            if (reply.find_first_not_of(" \t\r\n") == std::string::npos)
                throw Error(ErrorCode::ProviderUnavailable, "endpoint returned an empty reply");
            try {
                parse(reply);
            } catch (const Error &e) {
                last_reply = reply;
                last_error = e.what();
                continue;
            }
            context = std::move(messages);
            context.push_back(ChatMessage{"assistant", reply});
            return;
        }
        throw ProviderParseError("reply could not be parsed after " +
                                     std::to_string(options_.max_retries) + " retries: " + last_error,
                                 last_reply);
    };

    RawTravelInfo raw;
    raw.city = request.city;
    raw.rating_scale = options_.rating_scale;
    ask(poi_list_prompt(request), [&](const std::string &r) { raw.poi_names = read_names(request, r); });
    ask(rating_prompt(options_.rating_scale),
        [&](const std::string &r) { raw.ratings = read_ratings(raw.poi_names, raw.rating_scale, r); });
    ask(visit_time_prompt(),
        [&](const std::string &r) { raw.visit_minutes = read_visits(raw.poi_names, r); });
    ask(travel_time_prompt(request),
        [&](const std::string &r) { raw.travel_minutes = read_travel(raw.poi_names, r); });
    raw.check();
    return raw;
}

RawTravelInfo raw_from_replies(const ProviderRequest &request, int rating_scale,
                               const std::string &poi_reply, const std::string &rating_reply,
                               const std::string &visit_reply, const std::string &travel_reply) {
    RawTravelInfo raw;
    raw.city = request.city;
    raw.rating_scale = rating_scale;
    raw.poi_names = read_names(request, poi_reply);
    raw.ratings = read_ratings(raw.poi_names, rating_scale, rating_reply);
    raw.visit_minutes = read_visits(raw.poi_names, visit_reply);
    raw.travel_minutes = read_travel(raw.poi_names, travel_reply);
    raw.check();
    return raw;
}

} // namespace trippal
