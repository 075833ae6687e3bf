#include "wattprint/report/render.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wattprint/error.hpp"
#include "wattprint/text.hpp"

namespace wattprint::report {

std::optional<Format> format_from_string(std::string_view name) {
    const std::string lowered = to_lower(trim(name));
    if (lowered == "text") return Format::Text;
    if (lowered == "csv") return Format::Csv;
    if (lowered == "jsonl" || lowered == "json-lines") return Format::JsonLines;
    return std::nullopt;
}

std::int64_t display_round(double value) {
    return std::llround(value);
}

namespace {

constexpr std::string_view kCsvHeader =
    "label,hardware,watts,hours,kwh,co2e_lbs,cloud_lower_usd,cloud_upper_usd,electricity_usd,"
    "kwh_display,co2e_display,cloud_lower_display,cloud_upper_display,electricity_display,partial";

std::string display_int(double value) {
    return std::to_string(display_round(value));
}

std::string display_watts(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 2);
    return std::string(buf.data(), ptr);
}

// Commas are field separators in the CSV body and never part of a value.
std::string csv_safe(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
    }
    return out;
}

std::string render_csv(const ReportDocument& doc) {
    std::string out;
    out += kCsvHeader;
    out += '\n';
    for (const ReportRow& row : doc.rows) {
        const auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
        const auto opt_display = [](const std::optional<double>& v) { return v ? display_int(*v) : std::string(); };

        out += csv_safe(row.label);
        out += ',';
        out += csv_safe(row.hardware);
        out += ',';
        out += opt(row.watts);
        out += ',';
        out += opt(row.hours);
        out += ',';
        out += opt(row.kwh);
        out += ',';
        out += opt(row.co2e_lbs);
        out += ',';
        out += row.cloud_cost ? format_double(row.cloud_cost->lower_usd) : std::string();
        out += ',';
        out += row.cloud_cost ? format_double(row.cloud_cost->upper_usd) : std::string();
        out += ',';
        out += opt(row.electricity_usd);
        out += ',';
        out += opt_display(row.kwh);
        out += ',';
        out += opt_display(row.co2e_lbs);
        out += ',';
        out += row.cloud_cost ? display_int(row.cloud_cost->lower_usd) : std::string();
        out += ',';
        out += row.cloud_cost ? display_int(row.cloud_cost->upper_usd) : std::string();
        out += ',';
        out += opt_display(row.electricity_usd);
        out += ',';
        out += row.partial ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::string render_jsonl(const ReportDocument& doc) {
    using json = nlohmann::ordered_json;

    std::string out;
    json head;
    head["title"] = doc.title;
    head["provenance"] = {
        {"pue", doc.provenance.pue},
        {"co2e_lbs_per_kwh", doc.provenance.co2e_lbs_per_kwh},
        {"price_source", doc.provenance.price_source},
    };
    for (const auto& [key, value] : doc.provenance.extra) {
        head["provenance"][key] = value;
    }
    if (!doc.notes.empty()) {
        head["notes"] = doc.notes;
    }
    out += head.dump();
    out += '\n';

    for (const ReportRow& row : doc.rows) {
        json line;
        line["label"] = row.label;
        if (!row.hardware.empty()) line["hardware"] = row.hardware;
        if (row.watts) line["watts"] = *row.watts;
        if (row.hours) line["hours"] = *row.hours;
        if (row.kwh) {
            line["kwh"] = *row.kwh;
            line["kwh_display"] = display_round(*row.kwh);
        }
        if (row.co2e_lbs) {
            line["co2e_lbs"] = *row.co2e_lbs;
            line["co2e_display"] = display_round(*row.co2e_lbs);
        }
        if (row.cloud_cost) {
            line["cloud_lower_usd"] = row.cloud_cost->lower_usd;
            line["cloud_upper_usd"] = row.cloud_cost->upper_usd;
            line["cloud_lower_display"] = display_round(row.cloud_cost->lower_usd);
            line["cloud_upper_display"] = display_round(row.cloud_cost->upper_usd);
        }
        if (row.electricity_usd) {
            line["electricity_usd"] = *row.electricity_usd;
            line["electricity_display"] = display_round(*row.electricity_usd);
        }
        line["partial"] = row.partial;
        out += line.dump();
        out += '\n';
    }
    return out;
}

std::string render_text(const ReportDocument& doc) {
    static constexpr std::array<std::string_view, 7> kHeadings = {
        "workload", "hardware", "watts", "hours", "kWh*PUE", "CO2e(lbs)", "cost(USD)"};

    std::vector<std::array<std::string, 7>> cells;
    bool any_partial = false;
    for (const ReportRow& row : doc.rows) {
        std::array<std::string, 7> line;
        line[0] = row.label + (row.partial ? " *" : "");
        line[1] = row.hardware.empty() ? "-" : row.hardware;
        line[2] = row.watts ? display_watts(*row.watts) : "-";
        line[3] = row.hours ? format_double(*row.hours) : "-";
        line[4] = row.kwh ? display_int(*row.kwh) : "-";
        line[5] = row.co2e_lbs ? display_int(*row.co2e_lbs) : "-";
        std::string cost;
        if (row.cloud_cost) {
            cost = "$" + display_int(row.cloud_cost->lower_usd) + "-$" + display_int(row.cloud_cost->upper_usd);
        }
        if (row.electricity_usd) {
            if (!cost.empty()) cost += " ";
            cost += "(elec $" + display_int(*row.electricity_usd) + ")";
        }
        line[6] = cost.empty() ? "-" : cost;
        any_partial = any_partial || row.partial;
        cells.push_back(std::move(line));
    }

    std::array<std::size_t, 7> widths{};
    for (std::size_t c = 0; c < widths.size(); ++c) {
        widths[c] = kHeadings[c].size();
        for (const auto& line : cells) {
            widths[c] = std::max(widths[c], line[c].size());
        }
    }

    const auto pad = [](std::string_view text, std::size_t width, bool right) {
        std::string cell;
        if (right) cell.append(width - text.size(), ' ');
        cell += text;
        if (!right) cell.append(width - text.size(), ' ');
        return cell;
    };

    std::string out;
    if (!doc.title.empty()) {
        out += doc.title;
        out += "\n\n";
    }
    for (const std::string& note : doc.notes) {
        out += note;
        out += '\n';
    }
    if (!doc.notes.empty()) out += '\n';

    std::string header = "  ";
    for (std::size_t c = 0; c < widths.size(); ++c) {
        header += pad(kHeadings[c], widths[c], c >= 2 && c <= 5);
        header += (c + 1 < widths.size()) ? "  " : "";
    }
    out += header;
    out += '\n';
    out += "  ";
    out.append(header.size() - 2, '-');
    out += '\n';

    for (const auto& line : cells) {
        out += "  ";
        for (std::size_t c = 0; c < widths.size(); ++c) {
            out += pad(line[c], widths[c], c >= 2 && c <= 5);
            out += (c + 1 < widths.size()) ? "  " : "";
        }
        out += '\n';
    }

    if (any_partial) {
        out += "\n  * partial: one or more power domains were unavailable\n";
    }

    out += "\nconfig:\n";
    out += "  pue = " + format_double(doc.provenance.pue) + '\n';
    out += "  co2e_lbs_per_kwh = " + format_double(doc.provenance.co2e_lbs_per_kwh) + '\n';
    out += "  prices = " + doc.provenance.price_source + '\n';
    for (const auto& [key, value] : doc.provenance.extra) {
        out += "  " + key + " = " + value + '\n';
    }
    return out;
}

} // namespace

std::string render(const ReportDocument& doc, Format format) {
    switch (format) {
        case Format::Text: return render_text(doc);
        case Format::Csv: return render_csv(doc);
        case Format::JsonLines: return render_jsonl(doc);
    }
    throw DataError("unknown report format");
}

ReportDocument parse_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader) {
        throw DataError("report CSV must start with header '" + std::string(kCsvHeader) + "'");
    }

    ReportDocument doc;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;

        const auto fail = [&](const std::string& message) -> void {
            throw DataError("report line " + std::to_string(line_number) + ": " + message);
        };

        const auto fields = split_csv(line);
        if (fields.size() != 15) fail("expected 15 fields, got " + std::to_string(fields.size()));

        const auto opt = [&](const std::string& text) -> std::optional<double> {
            if (trim(text).empty()) return std::nullopt;
            const auto value = try_parse_double(trim(text));
            if (!value) fail("bad number '" + text + "'");
            return value;
        };

        ReportRow row;
        row.label = fields[0];
        row.hardware = fields[1];
        row.watts = opt(fields[2]);
        row.hours = opt(fields[3]);
        row.kwh = opt(fields[4]);
        row.co2e_lbs = opt(fields[5]);
        const auto lower = opt(fields[6]);
        const auto upper = opt(fields[7]);
        if (lower.has_value() != upper.has_value()) fail("cloud bounds must both be present or both empty");
        if (lower) row.cloud_cost = cost::CostRange{*lower, *upper};
        row.electricity_usd = opt(fields[8]);
        // fields 9..13 are display values, derivable from the above
        const std::string_view partial = trim(fields[14]);
        if (partial != "true" && partial != "false") fail("bad partial flag '" + std::string(partial) + "'");
        row.partial = partial == "true";
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

} // namespace wattprint::report
