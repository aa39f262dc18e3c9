#include <algorithm>

#include "json.hpp"

#include "mathkg/query.hpp"

namespace mathkg::query {

namespace {

size_t display_width(std::string_view s) {
  size_t n = 0;
  for (char ch : s) {
    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string cell_text(const std::optional<Term>& cell, const PrefixMap& prefixes) {
  return cell ? display_term(*cell, prefixes) : std::string();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string format_csv(const ResultTable& table, const PrefixMap& prefixes) {
  std::string out;
  auto line = [&](const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += csv_field(fields[i]);
    }
    out += "\r\n";
  };
  line(table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& cell : row) fields.push_back(cell_text(cell, prefixes));
    line(fields);
  }
  return out;
}

std::string format_text(const ResultTable& table, const PrefixMap& prefixes) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back(table.header);
  for (const auto& row : table.rows) {
    std::vector<std::string> line;
    for (const auto& cell : row) {
      std::string text = cell_text(cell, prefixes);
      std::replace(text.begin(), text.end(), '\n', ' ');
      line.push_back(std::move(text));
    }
    cells.push_back(std::move(line));
  }
  std::vector<size_t> width(table.header.size(), 0);
  for (const auto& line : cells) {
    for (size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], display_width(line[i]));
  }

  std::string out;
  auto emit = [&](const std::vector<std::string>& line) {
    std::string text;
    for (size_t i = 0; i < line.size(); ++i) {
      if (i) text += "  ";
      text += line[i];
      text.append(width[i] - display_width(line[i]), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
  };
  emit(cells[0]);
  std::vector<std::string> rule;
  for (size_t w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (size_t i = 1; i < cells.size(); ++i) emit(cells[i]);
  for (const auto& w : table.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string format_json(const ResultTable& table, const PrefixMap& prefixes) {
  nlohmann::ordered_json doc;
  doc["columns"] = table.header;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto cells = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (!cell) {
        cells.push_back(nullptr);
        continue;
      }
      nlohmann::ordered_json c;
      if (cell->is_iri()) {
        c["type"] = "iri";
        c["value"] = cell->iri().str();
        c["display"] = display_term(*cell, prefixes);
      } else {
        const auto& lit = cell->literal();
        c["type"] = "literal";
        c["value"] = lit.lexical();
        c["display"] = lit.lexical();
        c["datatype"] = datatype_iri(lit.datatype());
        if (!lit.language().empty()) c["lang"] = lit.language();
      }
      cells.push_back(std::move(c));
    }
    rows.push_back(std::move(cells));
  }
  doc["rows"] = std::move(rows);
  doc["warnings"] = table.warnings;
  return doc.dump(2) + "\n";
}

}  // namespace

std::optional<ResultFormat> result_format_from_name(std::string_view name) {
  if (name == "text" || name == "aligned-text") return ResultFormat::AlignedText;
  if (name == "csv") return ResultFormat::Csv;
  if (name == "json" || name == "json-rows") return ResultFormat::JsonRows;
  return std::nullopt;
}

std::string display_term(const Term& term, const PrefixMap& prefixes) {
  if (const auto* iri = term.as_iri()) return display_iri(*iri, prefixes);
  return term.literal().lexical();
}

std::string format_results(const ResultTable& table, ResultFormat format,
                           const PrefixMap& prefixes) {
  switch (format) {
    case ResultFormat::Csv:
      return format_csv(table, prefixes);
    case ResultFormat::JsonRows:
      return format_json(table, prefixes);
    case ResultFormat::AlignedText:
      break;
  }
  return format_text(table, prefixes);
}

}  // namespace mathkg::query
