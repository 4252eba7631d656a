#include "mvcm/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mvcm {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Parser {
  ModelDocument doc;
  std::vector<std::string> atoms;
  std::vector<std::pair<std::string, std::vector<std::string>>> elements;
  bool custom_lattice = false;

  void error(int line, std::string msg) {
    doc.diagnostics.push_back({line, std::move(msg)});
  }
};

std::vector<std::pair<std::string, std::vector<std::string>>> paper_names();

}  // namespace

ModelDocument parse_model_file(std::string_view text) {
  Parser p;
  {
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) p.doc.lines.push_back(line);
  }

  auto content_of = [](const std::string& raw) {
    auto hash = raw.find('#');
    return strip(hash == std::string::npos ? raw : raw.substr(0, hash));
  };

  // Pass 1: the lattice declaration, so labels can be resolved below.
  for (std::size_t li = 0; li < p.doc.lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string content = content_of(p.doc.lines[li]);
    if (content.empty()) continue;
    auto tokens = split_ws(content);
    if (tokens[0] == "lattice") {
      if (tokens.size() < 3 || tokens[1] != "atoms") {
        p.error(line_no, "expected: lattice atoms <id> <id> ...");
        continue;
      }
      if (p.custom_lattice) {
        p.error(line_no, "duplicate lattice declaration");
        continue;
      }
      p.custom_lattice = true;
      p.atoms.assign(tokens.begin() + 2, tokens.end());
    } else if (tokens[0] == "element") {
      auto eq = std::find(tokens.begin(), tokens.end(), "=");
      if (tokens.size() < 2 || eq != tokens.begin() + 2) {
        p.error(line_no, "expected: element <name> = <atom> ...");
        continue;
      }
      p.elements.emplace_back(tokens[1],
                              std::vector<std::string>(eq + 1, tokens.end()));
    }
  }

  NamedScale scale;
  try {
    if (!p.custom_lattice && p.elements.empty()) {
      scale = build_paper_lattice();
    } else {
      auto names = p.custom_lattice ? decltype(p.elements){} : paper_names();
      if (!p.custom_lattice) p.atoms = {"ba0", "b", "bn0", "0c", "0d"};
      names.insert(names.end(), p.elements.begin(), p.elements.end());
      scale = make_scale(std::make_shared<const AtomLattice>(p.atoms, names));
    }
  } catch (const std::invalid_argument& ex) {
    p.error(0, std::string("bad lattice declaration: ") + ex.what());
    return std::move(p.doc);
  }

  MapModel model;
  model.scale = scale;

  auto parse_label = [&](const std::string& s, int line_no) -> std::optional<AtomSet> {
    try {
      return parse_element(scale, s);
    } catch (const ParseError& ex) {
      p.error(line_no, ex.what());
      return std::nullopt;
    }
  };

  // Pass 2: concepts first, so weights/inits/docs can reference them in
  // any order relative to each other.
  for (std::size_t li = 0; li < p.doc.lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    auto tokens = split_ws(content_of(p.doc.lines[li]));
    if (tokens.empty() || tokens[0] != "concept") continue;
    if (tokens.size() < 2 || tokens.size() > 3 ||
        (tokens.size() == 3 && tokens[2] != "clamped")) {
      p.error(line_no, "expected: concept <id> [clamped]");
      continue;
    }
    if (model.concept_index(tokens[1]) >= 0) {
      p.error(line_no, "duplicate concept: " + tokens[1]);
      continue;
    }
    model.concepts.push_back(tokens[1]);
    model.clamped.push_back(tokens.size() == 3);
  }

  for (std::size_t li = 0; li < p.doc.lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    std::string content = content_of(p.doc.lines[li]);
    if (content.empty()) continue;
    auto tokens = split_ws(content);
    const std::string& kind = tokens[0];
    if (kind == "lattice" || kind == "element" || kind == "concept") continue;

    if (kind == "weight") {
      // weight <src> -> <dst> : [-]<label>
      auto colon = content.find(':');
      if (tokens.size() < 4 || tokens[2] != "->" || colon == std::string::npos) {
        p.error(line_no, "expected: weight <src> -> <dst> : [-]<label>");
        continue;
      }
      int src = model.concept_index(tokens[1]);
      int dst = model.concept_index(tokens[3]);
      if (src < 0) p.error(line_no, "unknown concept: " + tokens[1]);
      if (dst < 0) p.error(line_no, "unknown concept: " + tokens[3]);
      if (src < 0 || dst < 0) continue;
      std::string value = strip(content.substr(colon + 1));
      bool negative = !value.empty() && value[0] == '-';
      if (negative) value = strip(value.substr(1));
      auto parsed = parse_label(value, line_no);
      if (!parsed) continue;
      if (parsed->bits == 0) {
        p.error(line_no, "zero weight; omit the entry instead");
        continue;
      }
      if (!model.weights.emplace(WeightKey{src, dst}, SignedWeight{*parsed, negative})
               .second)
        p.error(line_no, "duplicate weight entry " + tokens[1] + " -> " + tokens[3]);
    } else if (kind == "init") {
      auto colon = content.find(':');
      if (colon == std::string::npos) {
        p.error(line_no, "expected: init <case>: <id>=<label> ...");
        continue;
      }
      std::string case_name = strip(content.substr(4, colon - 4));
      if (case_name.empty() || case_name.find(' ') != std::string::npos) {
        p.error(line_no, "bad init case name: '" + case_name + "'");
        continue;
      }
      if (model.init_cases.contains(case_name)) {
        p.error(line_no, "duplicate init case: " + case_name);
        continue;
      }
      std::vector<std::optional<AtomSet>> values(model.concepts.size());
      bool bad = false;
      for (const std::string& assign : split_ws(content.substr(colon + 1))) {
        auto eq = assign.find('=');
        if (eq == std::string::npos) {
          p.error(line_no, "expected <id>=<label>, got: " + assign);
          bad = true;
          continue;
        }
        int idx = model.concept_index(assign.substr(0, eq));
        if (idx < 0) {
          p.error(line_no, "unknown concept: " + assign.substr(0, eq));
          bad = true;
          continue;
        }
        if (values[idx]) {
          p.error(line_no, "concept assigned twice: " + assign.substr(0, eq));
          bad = true;
          continue;
        }
        auto parsed = parse_label(assign.substr(eq + 1), line_no);
        if (!parsed) {
          bad = true;
          continue;
        }
        values[idx] = *parsed;
      }
      for (std::size_t i = 0; i < values.size(); ++i)
        if (!values[i]) {
          p.error(line_no, "init case " + case_name +
                               " misses concept: " + model.concepts[i]);
          bad = true;
        }
      if (bad) continue;
      std::vector<AtomSet> vec;
      for (auto& v : values) vec.push_back(*v);
      model.init_cases.emplace(case_name, std::move(vec));
    } else if (kind == "doc") {
      auto colon = content.find(':');
      if (tokens.size() < 2 || colon == std::string::npos) {
        p.error(line_no, "expected: doc <id> : <label> ...");
        continue;
      }
      int idx = model.concept_index(tokens[1]);
      if (idx < 0) {
        p.error(line_no, "unknown concept: " + tokens[1]);
        continue;
      }
      if (model.docs.contains(idx)) {
        p.error(line_no, "duplicate doc list for: " + tokens[1]);
        continue;
      }
      std::vector<AtomSet> docs;
      for (const std::string& label : split_ws(content.substr(colon + 1)))
        if (auto parsed = parse_label(label, line_no)) docs.push_back(*parsed);
      if (docs.empty()) {
        p.error(line_no, "empty doc list for: " + tokens[1]);
        continue;
      }
      model.docs.emplace(idx, std::move(docs));
    } else {
      p.error(line_no, "unknown directive: " + kind);
    }
  }

  if (model.concepts.empty()) p.error(0, "no concepts declared");

  if (p.doc.diagnostics.empty()) p.doc.model = std::move(model);
  return std::move(p.doc);
}

namespace {

std::vector<std::pair<std::string, std::vector<std::string>>> paper_names() {
  std::vector<std::pair<std::string, std::vector<std::string>>> names;
  NamedScale paper = build_paper_lattice();
  for (const auto& [label, bits] : paper->names()) {
    std::vector<std::string> atom_list;
    for (std::size_t i = 0; i < paper->atom_count(); ++i)
      if (bits & (std::uint64_t{1} << i)) atom_list.push_back(paper->atoms()[i]);
    names.emplace_back(label, std::move(atom_list));
  }
  return names;
}

bool is_paper_scale(const NamedScale& scale) {
  NamedScale paper = build_paper_lattice();
  return scale->atoms() == paper->atoms() && scale->names() == paper->names();
}

}  // namespace

std::string serialize_weights(const MapModel& model, const WeightMatrix& weights) {
  std::string out;
  for (const auto& [key, w] : weights) {
    out += "weight " + model.concepts[key.first] + " -> " +
           model.concepts[key.second] + " : ";
    if (w.negative) out += "-";
    out += format_element(model.scale, w.value) + "\n";
  }
  return out;
}

std::string serialize_model(const MapModel& model) {
  std::string out;
  if (!is_paper_scale(model.scale)) {
    out += "lattice atoms";
    for (const auto& atom : model.scale->atoms()) out += " " + atom;
    out += "\n";
    for (const auto& [label, bits] : model.scale->names()) {
      if (label == "0" && bits == 0) continue;
      if (bits == model.scale->full_mask() && label == "Th") continue;
      out += "element " + label + " =";
      for (std::size_t i = 0; i < model.scale->atom_count(); ++i)
        if (bits & (std::uint64_t{1} << i)) out += " " + model.scale->atoms()[i];
      out += "\n";
    }
  }
  for (int i = 0; i < model.concept_count(); ++i) {
    out += "concept " + model.concepts[i];
    if (model.clamped[i]) out += " clamped";
    out += "\n";
  }
  out += serialize_weights(model, model.weights);
  for (const auto& [case_name, values] : model.init_cases) {
    out += "init " + case_name + ":";
    for (int i = 0; i < model.concept_count(); ++i)
      out += " " + model.concepts[i] + "=" + format_element(model.scale, values[i]);
    out += "\n";
  }
  for (const auto& [idx, docs] : model.docs) {
    out += "doc " + model.concepts[idx] + " :";
    for (const AtomSet& d : docs) out += " " + format_element(model.scale, d);
    out += "\n";
  }
  return out;
}

namespace {

std::string atoms_braced(const NamedScale& scale, const AtomSet& a) {
  std::string s = "{";
  for (std::size_t i = 0; i < scale->atom_count(); ++i)
    if (a.bits & (std::uint64_t{1} << i)) {
      if (s.size() > 1) s += ',';
      s += scale->atoms()[i];
    }
  return s + "}";
}

}  // namespace

std::string serialize_trace(const IterationTrace& trace, const MapModel& model,
                            TraceFormat format) {
  std::string out;
  const std::string summary =
      (trace.converged ? "converged in " : "no convergence within ") +
      std::to_string(trace.steps) + " iterations";

  if (format == TraceFormat::lines) {
    for (std::size_t k = 0; k < trace.states.size(); ++k)
      for (int i = 0; i < model.concept_count(); ++i) {
        const AtomSet& a = trace.states[k][i];
        out += std::to_string(k) + "\t" + model.concepts[i] + "\t" +
               format_element(model.scale, a) + "\t" +
               atoms_braced(model.scale, a) + "\n";
      }
    out += (trace.converged ? "converged\t" : "diverged\t") +
           std::to_string(trace.steps) + "\n";
    return out;
  }

  // Aligned table, one row per recorded state.
  std::vector<std::size_t> width(model.concept_count() + 1, 1);
  std::vector<std::vector<std::string>> rows;
  {
    std::vector<std::string> header{"k"};
    for (const auto& name : model.concepts) header.push_back(name);
    rows.push_back(std::move(header));
  }
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (int i = 0; i < model.concept_count(); ++i)
      row.push_back(format_element(model.scale, trace.states[k][i]));
    rows.push_back(std::move(row));
  }
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(width[c] - row[c].size(), ' ');
    }
    out += line + "\n";
  }
  out += summary + "\n";
  return out;
}

ParsedTraceLines read_trace_lines(std::string_view text) {
  ParsedTraceLines out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool summary_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (summary_seen) throw ParseError("records after the summary line");
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab = line.find('\t'); tab != std::string::npos;
         tab = line.find('\t', start)) {
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));
    if (fields.size() == 2 && (fields[0] == "converged" || fields[0] == "diverged")) {
      out.converged = fields[0] == "converged";
      out.steps = std::stoi(fields[1]);
      summary_seen = true;
      continue;
    }
    if (fields.size() != 4) throw ParseError("malformed trace record: " + line);
    out.records.push_back({std::stoi(fields[0]), fields[1], fields[2], fields[3]});
  }
  if (!summary_seen) throw ParseError("missing convergence summary line");
  return out;
}

}  // namespace mvcm
