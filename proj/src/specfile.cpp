#include "hsbd/specfile.hpp"

#include <algorithm>
#include <sstream>

#include "hsbd/errors.hpp"

namespace hsbd {

namespace {

struct KeyedLine {
  long long line = 0;
  long long value_col = 1;
  std::string key;
  std::string value;
};

struct Section {
  long long line = 0;
  std::string type;
  std::string name;
  std::vector<KeyedLine> entries;
};

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text + std::string(1, sep)) {
    if (ch == sep) {
      std::string t = trim(cur);
      if (!t.empty()) out.push_back(t);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

// Tokens like "(0,0)" or "(-1,0):1/2", separated by spaces or commas outside
// parentheses.
std::vector<std::string> split_slot_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == ' ' || ch == ',' || ch == '\t') && depth == 0) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

long long parse_int(const std::string& text, long long line, long long col) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, col, "expected an integer, got '" + text + "'");
  }
}

Rational parse_rat(const std::string& text, long long line, long long col) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, col, e.what());
  }
}

SequenceRule parse_rule(const std::string& text, long long line, long long col) {
  try {
    return SequenceRule::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, col, e.what());
  }
}

Slot parse_slot(const std::string& text, long long line, long long col) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw ParseError(line, col, "expected a slot '(offset,copy)', got '" + text + "'");
  auto parts = split_list(text.substr(1, text.size() - 2), ',');
  if (parts.size() != 2) throw ParseError(line, col, "slot needs exactly (offset,copy)");
  return Slot{parse_int(parts[0], line, col), parse_int(parts[1], line, col)};
}

// "c1,c2,... @ lo"
Band parse_band(const std::string& text, long long line, long long col) {
  auto at = text.find('@');
  if (at == std::string::npos) throw ParseError(line, col, "band needs 'coeffs @ lo'");
  auto coeffs = split_list(text.substr(0, at), ',');
  if (coeffs.empty()) throw ParseError(line, col, "band needs coefficients");
  long long lo = parse_int(trim(text.substr(at + 1)), line, col);
  std::vector<Rational> values;
  values.reserve(coeffs.size());
  for (const auto& c : coeffs) values.push_back(parse_rat(c, line, col));
  try {
    return Band(lo, std::move(values));
  } catch (const std::invalid_argument& e) {
    throw SemanticError(std::string(e.what()) + " (line " + std::to_string(line) + ")");
  }
}

const KeyedLine* find_key(const Section& sec, const std::string& key) {
  for (const auto& e : sec.entries)
    if (e.key == key) return &e;
  return nullptr;
}

const KeyedLine& need_key(const Section& sec, const std::string& key) {
  const KeyedLine* e = find_key(sec, key);
  if (!e)
    throw ParseError(sec.line, 1, "section [" + sec.type +
                                      (sec.name.empty() ? "" : " " + sec.name) + "] needs key '" +
                                      key + "'");
  return *e;
}

// Entries "prefix.<n> = ..." in level order, indices consecutive from 0.
std::vector<const KeyedLine*> indexed_keys(const Section& sec, const std::string& prefix) {
  std::vector<std::pair<long long, const KeyedLine*>> found;
  for (const auto& e : sec.entries) {
    if (e.key.rfind(prefix + ".", 0) != 0) continue;
    found.push_back({parse_int(e.key.substr(prefix.size() + 1), e.line, 1), &e});
  }
  std::sort(found.begin(), found.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<const KeyedLine*> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i].first != static_cast<long long>(i))
      throw ParseError(found[i].second->line, 1,
                       "'" + prefix + ".*' indices must be consecutive from 0");
    out.push_back(found[i].second);
  }
  return out;
}

RuleProfile parse_profile(const Section& sec, const std::string& support_key,
                          const std::string& rule_prefix) {
  const KeyedLine& sup = need_key(sec, support_key);
  auto dots = sup.value.find("..");
  if (dots == std::string::npos)
    throw ParseError(sup.line, sup.value_col, "support must be 'lo..hi'");
  long long lo = parse_int(trim(sup.value.substr(0, dots)), sup.line, sup.value_col);
  long long hi = parse_int(trim(sup.value.substr(dots + 2)), sup.line, sup.value_col);
  if (hi < lo) throw ParseError(sup.line, sup.value_col, "support must have lo <= hi");
  RuleProfile profile;
  profile.lo = lo;
  for (long long k = lo; k <= hi; ++k) {
    const KeyedLine* e = find_key(sec, rule_prefix + "." + std::to_string(k));
    if (!e)
      throw ParseError(sec.line, 1, "missing '" + rule_prefix + "." + std::to_string(k) + "'");
    profile.rules.push_back(parse_rule(e->value, e->line, e->value_col));
  }
  return profile;
}

DiagramSpec build_diagram_from_text(const std::string& value, long long line, long long col) {
  if (value == "builtin:triadic") return DiagramSpec::triadic();
  const std::string classc_prefix = "builtin:classc(";
  if (value.rfind(classc_prefix, 0) == 0 && value.back() == ')') {
    std::string rule_text = value.substr(classc_prefix.size(),
                                         value.size() - classc_prefix.size() - 1);
    return DiagramSpec::class_c(parse_rule(rule_text, line, col));
  }
  throw ParseError(line, col, "unknown diagram builtin '" + value + "'");
}

DiagramSpec build_diagram(const Section& sec) {
  if (const KeyedLine* b = find_key(sec, "builtin"))
    return build_diagram_from_text("builtin:" + b->value, b->line, b->value_col);
  const KeyedLine& kind = need_key(sec, "kind");
  if (kind.value == "triadic") return DiagramSpec::triadic();
  if (kind.value == "classc") {
    const KeyedLine& a = need_key(sec, "a");
    return DiagramSpec::class_c(parse_rule(a.value, a.line, a.value_col));
  }
  if (kind.value == "rules") return DiagramSpec::from_rules(parse_profile(sec, "support", "rule"));
  if (kind.value == "explicit") {
    std::vector<Band> bands;
    for (const KeyedLine* e : indexed_keys(sec, "level"))
      bands.push_back(parse_band(e->value, e->line, e->value_col));
    std::optional<RuleProfile> tail;
    if (find_key(sec, "tail.support")) tail = parse_profile(sec, "tail.support", "tail.rule");
    return DiagramSpec::explicit_levels(std::move(bands), std::move(tail));
  }
  throw ParseError(kind.line, kind.value_col, "unknown diagram kind '" + kind.value + "'");
}

OrderSpec build_order(const Section& sec) {
  const KeyedLine& kind = need_key(sec, "kind");
  if (kind.value == "left-to-right") return OrderSpec::left_to_right();
  if (kind.value == "right-to-left") return OrderSpec::right_to_left();
  if (kind.value == "explicit") {
    std::vector<std::vector<Slot>> levels;
    for (const KeyedLine* e : indexed_keys(sec, "level")) {
      std::vector<Slot> slots;
      for (const std::string& tok : split_slot_tokens(e->value))
        slots.push_back(parse_slot(tok, e->line, e->value_col));
      levels.push_back(std::move(slots));
    }
    if (levels.empty()) throw ParseError(sec.line, 1, "explicit order needs 'level.0 = ...'");
    return OrderSpec::explicit_orders(std::move(levels));
  }
  throw ParseError(kind.line, kind.value_col, "unknown order kind '" + kind.value + "'");
}

OdometerSpec build_odometer(const Section& sec) {
  const KeyedLine& off = need_key(sec, "offsets");
  OdometerSpec odo;
  odo.offsets = parse_rule(off.value, off.line, off.value_col);
  if (const KeyedLine* b = find_key(sec, "base"))
    odo.base = parse_int(b->value, b->line, b->value_col);
  return odo;
}

WindowFamily build_window(const Section& sec) {
  const KeyedLine& lo = need_key(sec, "lo");
  const KeyedLine& hi = need_key(sec, "hi");
  return WindowFamily{parse_rule(lo.value, lo.line, lo.value_col),
                      parse_rule(hi.value, hi.line, hi.value_col)};
}

MarkovKernel build_kernel(const Section& sec) {
  const KeyedLine& kind = need_key(sec, "kind");
  Rational q(1);
  if (const KeyedLine* e = find_key(sec, "q")) q = parse_rat(e->value, e->line, e->value_col);
  if (kind.value == "uniform") return MarkovKernel::uniform(q);
  if (kind.value == "explicit") {
    std::vector<MarkovKernel::SlotProbs> levels;
    for (const KeyedLine* e : indexed_keys(sec, "level")) {
      MarkovKernel::SlotProbs probs;
      for (const std::string& tok : split_slot_tokens(e->value)) {
        auto colon = tok.rfind(':');
        if (colon == std::string::npos || tok.front() != '(')
          throw ParseError(e->line, e->value_col, "kernel entry must be '(offset,copy):p/q'");
        Slot slot = parse_slot(tok.substr(0, colon), e->line, e->value_col);
        probs.push_back({slot, parse_rat(tok.substr(colon + 1), e->line, e->value_col)});
      }
      levels.push_back(std::move(probs));
    }
    if (levels.empty()) throw ParseError(sec.line, 1, "explicit kernel needs 'level.0 = ...'");
    return MarkovKernel::explicit_kernel(q, std::move(levels));
  }
  throw ParseError(kind.line, kind.value_col, "unknown kernel kind '" + kind.value + "'");
}

}  // namespace

SpecDocument parse_spec(const std::string& text) {
  std::vector<Section> sections;
  Section* current = nullptr;
  std::optional<std::pair<KeyedLine, bool>> toplevel_diagram;

  std::istringstream in(text);
  std::string raw;
  long long lineno = 0;
  bool have_diagram_section = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(lineno, 1, "unterminated section header");
      auto inner = trim(line.substr(1, line.size() - 2));
      auto space = inner.find(' ');
      Section sec;
      sec.line = lineno;
      sec.type = space == std::string::npos ? inner : trim(inner.substr(0, space));
      sec.name = space == std::string::npos ? "" : trim(inner.substr(space + 1));
      if (sec.type != "diagram" && sec.type != "order" && sec.type != "odometer" &&
          sec.type != "window" && sec.type != "kernel")
        throw ParseError(lineno, 2, "unknown section type '" + sec.type + "'");
      if (sec.type == "diagram") {
        if (have_diagram_section) throw SemanticError("duplicate [diagram] section");
        have_diagram_section = true;
      } else if (sec.name.empty()) {
        throw ParseError(lineno, 2, "section [" + sec.type + "] needs a name");
      }
      sections.push_back(std::move(sec));
      current = &sections.back();
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, 1, "expected 'key = value'");
    KeyedLine entry;
    entry.line = lineno;
    entry.key = trim(line.substr(0, eq));
    entry.value = trim(line.substr(eq + 1));
    entry.value_col = static_cast<long long>(raw.find('=')) + 2;
    if (entry.key.empty()) throw ParseError(lineno, 1, "empty key");
    if (!current) {
      if (entry.key == "diagram") {
        toplevel_diagram = {entry, true};
        continue;
      }
      throw ParseError(lineno, 1, "'" + entry.key + "' appears before any section");
    }
    current->entries.push_back(std::move(entry));
  }

  SpecDocument doc;
  bool have_diagram = false;
  if (toplevel_diagram) {
    doc.diagram = build_diagram_from_text(toplevel_diagram->first.value,
                                          toplevel_diagram->first.line,
                                          toplevel_diagram->first.value_col);
    have_diagram = true;
  }
  for (const Section& sec : sections) {
    if (sec.type == "diagram") {
      if (have_diagram) throw SemanticError("diagram defined twice");
      doc.diagram = build_diagram(sec);
      have_diagram = true;
    }
  }
  if (!have_diagram) throw SemanticError("document defines no diagram");

  for (const Section& sec : sections) {
    if (sec.type == "order") {
      OrderSpec order = build_order(sec);
      if (order.kind() == OrderSpec::Kind::Explicit) {
        for (std::size_t n = 0; n < order.level_lists().size(); ++n) {
          try {
            order.ordered_slots(doc.diagram, static_cast<long long>(n));
          } catch (const FiniteHorizonError&) {
            break;
          }
        }
      }
      if (!doc.orders.emplace(sec.name, std::move(order)).second)
        throw SemanticError("duplicate order name '" + sec.name + "'");
    } else if (sec.type == "odometer") {
      OdometerSpec odo = build_odometer(sec);
      validate_odometer(doc.diagram, odo);
      if (!doc.odometers.emplace(sec.name, std::move(odo)).second)
        throw SemanticError("duplicate odometer name '" + sec.name + "'");
    } else if (sec.type == "window") {
      if (!doc.windows.emplace(sec.name, build_window(sec)).second)
        throw SemanticError("duplicate window name '" + sec.name + "'");
    } else if (sec.type == "kernel") {
      MarkovKernel kernel = build_kernel(sec);
      kernel.validate_against(doc.diagram, static_cast<long long>(kernel.level_lists().size()));
      if (!doc.kernels.emplace(sec.name, std::move(kernel)).second)
        throw SemanticError("duplicate kernel name '" + sec.name + "'");
    }
  }
  return doc;
}

namespace {

std::string serialize_diagram(const DiagramSpec& d) {
  std::string out = "[diagram]\n";
  if (d.kind() == DiagramSpec::Kind::Triadic) return out + "kind = triadic\n";
  if (d.is_class_c()) return out + "kind = classc\na = " + d.class_c_diagonal().to_text() + "\n";
  if (d.kind() == DiagramSpec::Kind::Rules) {
    auto profile = *d.tail_profile();
    out += "kind = rules\nsupport = " + std::to_string(profile.lo) + ".." +
           std::to_string(profile.hi()) + "\n";
    for (std::size_t i = 0; i < profile.rules.size(); ++i)
      out += "rule." + std::to_string(profile.lo + static_cast<long long>(i)) + " = " +
             profile.rules[i].to_text() + "\n";
    return out;
  }
  out += "kind = explicit\n";
  const auto& bands = d.explicit_bands();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    out += "level." + std::to_string(i) + " = ";
    const auto& coeffs = bands[i].coefficients();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (j) out += ",";
      out += coeffs[j].str();
    }
    out += " @ " + std::to_string(bands[i].lo()) + "\n";
  }
  if (auto tail = d.tail_profile()) {
    out += "tail.support = " + std::to_string(tail->lo) + ".." + std::to_string(tail->hi()) + "\n";
    for (std::size_t i = 0; i < tail->rules.size(); ++i)
      out += "tail.rule." + std::to_string(tail->lo + static_cast<long long>(i)) + " = " +
             tail->rules[i].to_text() + "\n";
  }
  return out;
}

std::string slot_str(const Slot& s) {
  return "(" + std::to_string(s.offset) + "," + std::to_string(s.copy) + ")";
}

}  // namespace

std::string serialize_spec(const SpecDocument& doc) {
  std::string out = serialize_diagram(doc.diagram);
  for (const auto& [name, order] : doc.orders) {
    out += "\n[order " + name + "]\n";
    switch (order.kind()) {
      case OrderSpec::Kind::LeftToRight:
        out += "kind = left-to-right\n";
        break;
      case OrderSpec::Kind::RightToLeft:
        out += "kind = right-to-left\n";
        break;
      case OrderSpec::Kind::Explicit: {
        out += "kind = explicit\n";
        const auto& lists = order.level_lists();
        for (std::size_t i = 0; i < lists.size(); ++i) {
          out += "level." + std::to_string(i) + " =";
          for (const Slot& s : lists[i]) out += " " + slot_str(s);
          out += "\n";
        }
        break;
      }
    }
  }
  for (const auto& [name, odo] : doc.odometers) {
    out += "\n[odometer " + name + "]\n";
    out += "offsets = " + odo.offsets.to_text() + "\n";
    out += "base = " + std::to_string(odo.base) + "\n";
  }
  for (const auto& [name, win] : doc.windows) {
    out += "\n[window " + name + "]\n";
    out += "lo = " + win.lo.to_text() + "\n";
    out += "hi = " + win.hi.to_text() + "\n";
  }
  for (const auto& [name, kernel] : doc.kernels) {
    out += "\n[kernel " + name + "]\n";
    out += "q = " + kernel.initial().str() + "\n";
    if (kernel.is_uniform()) {
      out += "kind = uniform\n";
    } else {
      out += "kind = explicit\n";
      const auto& lists = kernel.level_lists();
      for (std::size_t i = 0; i < lists.size(); ++i) {
        out += "level." + std::to_string(i) + " =";
        for (const auto& [slot, p] : lists[i]) out += " " + slot_str(slot) + ":" + p.str();
        out += "\n";
      }
    }
  }
  return out;
}

std::vector<MeasureVector> parse_vectors(const std::string& text) {
  std::vector<MeasureVector> out;
  std::istringstream in(text);
  std::string raw;
  long long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("constant", 0) == 0) {
      out.push_back(MeasureVector::constant(parse_rat(trim(line.substr(8)), lineno, 9)));
      continue;
    }
    if (line.rfind("finite", 0) == 0) {
      std::string rest = trim(line.substr(6));
      auto colon = rest.find(':');
      if (colon == std::string::npos)
        throw ParseError(lineno, 7, "finite vector needs 'finite lo: values'");
      long long lo = parse_int(trim(rest.substr(0, colon)), lineno, 7);
      std::vector<Rational> values;
      for (const auto& tok : split_list(rest.substr(colon + 1), ','))
        values.push_back(parse_rat(tok, lineno, 7));
      try {
        out.push_back(MeasureVector::finite(Band(lo, std::move(values))));
      } catch (const std::invalid_argument& e) {
        throw SemanticError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
      }
      continue;
    }
    throw ParseError(lineno, 1, "vector line must start with 'constant' or 'finite'");
  }
  return out;
}

}  // namespace hsbd
