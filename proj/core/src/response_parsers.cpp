#include "trippal/errors.hpp"
#include "trippal/providers.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace trippal {

namespace {

std::string_view trim(std::string_view text) {
    auto strip = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && strip(text.front()))
        text.remove_prefix(1);
    while (!text.empty() && strip(text.back()))
        text.remove_suffix(1);
    return text;
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

bool iequals_prefix(std::string_view text, std::string_view prefix) {
    if (text.size() < prefix.size())
        return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[i])) !=
            std::tolower(static_cast<unsigned char>(prefix[i])))
            return false;
    }
    return true;
}

std::size_t ifind(std::string_view text, std::string_view needle, std::size_t from = 0) {
    for (std::size_t i = from; i + needle.size() <= text.size(); ++i) {
        if (iequals_prefix(text.substr(i), needle))
            return i;
    }
    return std::string_view::npos;
}

// Leading integer followed only by an optional unit word.
std::optional<int> leading_int(std::string_view text, std::string_view unit_suffix) {
    text = trim(text);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data())
        return std::nullopt;
    std::string_view rest = trim(text.substr(static_cast<std::size_t>(ptr - text.data())));
    while (!rest.empty() && (rest.back() == '.' || rest.back() == ','))
        rest.remove_suffix(1);
    if (rest.empty())
        return value;
    bool one_word = std::all_of(rest.begin(), rest.end(),
                                [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
    if (!one_word)
        return std::nullopt;
    if (unit_suffix.empty())
        return value;
    if (rest.size() == unit_suffix.size() && iequals_prefix(rest, unit_suffix))
        return value;
    // Short forms of minute units ("min", "mins").
    if (iequals_prefix(unit_suffix, "minute") && iequals_prefix(rest, "min") && rest.size() <= 7)
        return value;
    return std::nullopt;
}

// Drops list decorations such as "1.", "2)", "-", "*" and markdown emphasis.
std::string_view strip_decorations(std::string_view text) {
    text = trim(text);
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i > 0 && i < text.size() && (text[i] == '.' || text[i] == ')'))
        text = trim(text.substr(i + 1));
    while (!text.empty() && (text.front() == '-' || text.front() == '*'))
        text = trim(text.substr(1));
    while (!text.empty() && text.back() == '*')
        text = trim(text.substr(0, text.size() - 1));
    return text;
}

// "louvre museum, Paris" -> "louvre museum"
std::string_view drop_city_suffix(std::string_view name) {
    auto comma = name.find(',');
    return trim(comma == std::string_view::npos ? name : name.substr(0, comma));
}

} // namespace

std::vector<std::string> parse_poi_list(std::string_view text) {
    std::vector<std::string> names;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of(",\n", pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view item = strip_decorations(text.substr(pos, end - pos));
        while (!item.empty() && item.back() == '.')
            item.remove_suffix(1);
        if (!item.empty())
            names.emplace_back(item);
        pos = end + 1;
    }
    if (names.empty())
        throw ParseError("no place names in reply");
    return names;
}

std::vector<std::pair<std::string, int>> parse_kv_lines(std::string_view text,
                                                        std::string_view unit_suffix) {
    std::vector<std::pair<std::string, int>> entries;
    for (std::string_view line : lines_of(text)) {
        auto eq = line.rfind('=');
        if (eq == std::string_view::npos)
            continue;
        std::string_view name = strip_decorations(line.substr(0, eq));
        auto value = leading_int(line.substr(eq + 1), unit_suffix);
        if (name.empty() || !value)
            continue;
        entries.emplace_back(std::string(name), *value);
    }
    if (entries.empty())
        throw ParseError("no 'name = value' lines in reply");
    return entries;
}

std::map<std::pair<std::string, std::string>, int> parse_travel_lines(std::string_view text) {
    std::map<std::pair<std::string, std::string>, int> entries;
    for (std::string_view line : lines_of(text)) {
        std::size_t from = ifind(line, "travel time from ");
        if (from == std::string_view::npos)
            continue;
        std::string_view rest = line.substr(from + 17);
        std::size_t is = ifind(rest, " is ");
        for (std::size_t next = is; next != std::string_view::npos; next = ifind(rest, " is ", next + 1))
            is = next;
        if (is == std::string_view::npos)
            continue;
        std::string_view pair = rest.substr(0, is);
        auto minutes = leading_int(rest.substr(is + 4), "minutes");
        if (!minutes)
            continue;

        // Prefer a " to " that follows a city suffix ("A, Paris to B, Paris").
        std::size_t split = std::string_view::npos;
        for (std::size_t at = ifind(pair, " to "); at != std::string_view::npos;
             at = ifind(pair, " to ", at + 1)) {
            if (split == std::string_view::npos)
                split = at;
            if (pair.substr(0, at).find(',') != std::string_view::npos) {
                split = at;
                break;
            }
        }
        if (split == std::string_view::npos)
            continue;
        try {
            std::string a = fold_name(drop_city_suffix(pair.substr(0, split)));
            std::string b = fold_name(drop_city_suffix(pair.substr(split + 4)));
            entries[{a, b}] = *minutes;
        } catch (const Error &) {
            continue;
        }
    }
    if (entries.empty())
        throw ParseError("no 'Travel time from A to B is k mins' lines in reply");
    return entries;
}

} // namespace trippal
