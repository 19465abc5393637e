#include "flipsort/io.hpp"

#include <cctype>
#include <sstream>

#include <json.hpp>

namespace flipsort {

namespace {

using nlohmann::json;

struct Located {
  std::string text;
  int line;    // 1-based
  int column;  // 1-based
};

struct Line {
  std::vector<Located> tokens;
  int number;
  bool blank;
};

// Content lines with per-token positions; '#' comment lines are dropped,
// blank lines kept as markers (rank-3 block separators).
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++number;

    std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      lines.push_back(Line{{}, number, true});
    } else if (raw[first] != '#') {
      Line line{{}, number, false};
      std::size_t i = first;
      while (i < raw.size()) {
        if (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r') {
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' &&
               raw[j] != '\r')
          ++j;
        line.tokens.push_back(Located{std::string(raw.substr(i, j - i)),
                                      number, static_cast<int>(i) + 1});
        i = j;
      }
      lines.push_back(std::move(line));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  // Trailing blank lines carry no structure.
  while (!lines.empty() && lines.back().blank) lines.pop_back();
  return lines;
}

enum class TokenStyle { Unknown, Numeric, Letter };

Token parse_cell_token(const Located& tok, TokenStyle& style, Mode mode) {
  const std::string& s = tok.text;
  const bool is_letter = s.size() == 1 && std::isalpha(static_cast<unsigned char>(s[0]));
  bool is_numeric = !s.empty();
  for (std::size_t i = 0; i < s.size() && is_numeric; ++i) {
    if (i == 0 && (s[i] == '-' || s[i] == '+') && s.size() > 1) continue;
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) is_numeric = false;
  }
  if (!is_letter && !is_numeric)
    throw ParseError(tok.line, tok.column, "unrecognized token '" + s + "'");

  const TokenStyle this_style = is_letter ? TokenStyle::Letter : TokenStyle::Numeric;
  if (style == TokenStyle::Unknown) style = this_style;
  if (style != this_style)
    throw ParseError(tok.line, tok.column,
                     "mixed letter and numeric tokens in one instance");

  Token t;
  if (is_letter) {
    const char c = s[0];
    t.id = std::toupper(static_cast<unsigned char>(c)) - 'A' + 1;
    t.orientation = std::islower(static_cast<unsigned char>(c))
                        ? Orientation::Down
                        : Orientation::Up;
  } else {
    long v = 0;
    try {
      v = std::stol(s);
    } catch (const std::exception&) {
      throw ParseError(tok.line, tok.column, "integer out of range: " + s);
    }
    if (v == 0) throw ParseError(tok.line, tok.column, "token id 0 is not allowed");
    t.id = static_cast<int>(v < 0 ? -v : v);
    t.orientation = v < 0 ? Orientation::Down : Orientation::Up;
  }
  if (mode == Mode::Unsigned && t.orientation == Orientation::Down)
    throw ParseError(tok.line, tok.column,
                     "token '" + s + "' carries an orientation in an unsigned instance");
  return t;
}

}  // namespace

MultiArray parse_instance(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t at = 0;
  auto next_content = [&]() -> const Line& {
    while (at < lines.size() && lines[at].blank) ++at;
    if (at >= lines.size())
      throw ParseError(lines.empty() ? 1 : lines.back().number + 1, 1,
                       "unexpected end of instance");
    return lines[at++];
  };

  // Mode line.
  const Line& mode_line = next_content();
  if (mode_line.tokens.size() != 1 ||
      (mode_line.tokens[0].text != "unsigned" &&
       mode_line.tokens[0].text != "signed"))
    throw ParseError(mode_line.number, mode_line.tokens.empty()
                                           ? 1
                                           : mode_line.tokens[0].column,
                     "expected mode line 'unsigned' or 'signed'");
  const Mode mode =
      mode_line.tokens[0].text == "signed" ? Mode::Signed : Mode::Unsigned;

  // Dims line.
  const Line& dims_line = next_content();
  if (dims_line.tokens.empty() || dims_line.tokens.size() > 3)
    throw ParseError(dims_line.number, 1, "expected 1-3 dimension extents");
  std::vector<int> dims;
  for (const Located& tok : dims_line.tokens) {
    int v = 0;
    for (char c : tok.text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError(tok.line, tok.column,
                         "dimension extent must be a positive integer, got '" +
                             tok.text + "'");
      v = v * 10 + (c - '0');
      if (v > 1'000'000)
        throw ParseError(tok.line, tok.column, "dimension extent too large");
    }
    if (v < 1)
      throw ParseError(tok.line, tok.column,
                       "dimension extent must be positive");
    dims.push_back(v);
  }

  const int rank = static_cast<int>(dims.size());
  const int rows_per_block = rank == 1 ? 1 : dims[rank == 2 ? 0 : 1];
  const int blocks = rank == 3 ? dims[0] : 1;
  const int row_width = dims[static_cast<size_t>(rank) - 1];
  const int total = blocks * rows_per_block * row_width;

  std::vector<Token> cells;
  cells.reserve(static_cast<size_t>(total));
  TokenStyle style = TokenStyle::Unknown;
  std::vector<int> first_seen_line(static_cast<size_t>(total), 0);

  for (int b = 0; b < blocks; ++b) {
    if (b > 0) {
      // Rank-3 blocks are separated by a blank line.
      if (at < lines.size() && !lines[at].blank)
        throw ParseError(lines[at].number, 1,
                         "expected a blank line between blocks");
    }
    for (int r = 0; r < rows_per_block; ++r) {
      const Line& row = next_content();
      if (static_cast<int>(row.tokens.size()) != row_width) {
        const int col = row.tokens.size() > static_cast<size_t>(row_width)
                            ? row.tokens[static_cast<size_t>(row_width)].column
                            : (row.tokens.empty() ? 1 : row.tokens.back().column);
        throw ParseError(row.number, col,
                         "expected " + std::to_string(row_width) +
                             " tokens in this row, got " +
                             std::to_string(row.tokens.size()));
      }
      for (const Located& tok : row.tokens) {
        Token t = parse_cell_token(tok, style, mode);
        if (t.id > total)
          throw ParseError(tok.line, tok.column,
                           "token id " + std::to_string(t.id) +
                               " exceeds the cell count " +
                               std::to_string(total));
        if (first_seen_line[static_cast<size_t>(t.id) - 1] != 0)
          throw ParseError(tok.line, tok.column,
                           "duplicate token id " + std::to_string(t.id) +
                               " (first on line " +
                               std::to_string(
                                   first_seen_line[static_cast<size_t>(t.id) - 1]) +
                               ")");
        first_seen_line[static_cast<size_t>(t.id) - 1] = tok.line;
        cells.push_back(t);
      }
    }
  }

  while (at < lines.size() && lines[at].blank) ++at;
  if (at < lines.size())
    throw ParseError(lines[at].number,
                     lines[at].tokens.empty() ? 1 : lines[at].tokens[0].column,
                     "unexpected content after the cell grid");

  for (int id = 1; id <= total; ++id)
    if (first_seen_line[static_cast<size_t>(id) - 1] == 0)
      throw ParseError(lines.empty() ? 1 : lines.back().number, 1,
                       "missing token id " + std::to_string(id));

  return MultiArray::from_cells(std::move(dims), mode, std::move(cells));
}

std::string write_instance(const MultiArray& ma) {
  std::ostringstream out;
  out << to_string(ma.mode()) << '\n';
  for (int k = 0; k < ma.rank(); ++k)
    out << (k ? " " : "") << ma.dims()[static_cast<size_t>(k)];
  out << '\n';

  const int rank = ma.rank();
  const int row_width = ma.dims()[static_cast<size_t>(rank) - 1];
  const int rows_per_block = rank == 1 ? 1 : ma.dims()[rank == 2 ? 0 : 1];
  const int blocks = rank == 3 ? ma.dims()[0] : 1;
  int pos = 0;
  for (int b = 0; b < blocks; ++b) {
    if (b > 0) out << '\n';
    for (int r = 0; r < rows_per_block; ++r) {
      for (int c = 0; c < row_width; ++c, ++pos)
        out << (c ? " " : "") << signed_value(ma.cell(pos));
      out << '\n';
    }
  }
  return out.str();
}

MoveSequence parse_moves(std::string_view text) {
  MoveSequence moves;
  std::size_t i = 0;
  int index = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const std::string tok(text.substr(i, j - i));
    ++index;
    i = j;

    int axis;
    switch (tok[0]) {
      case 'H': case 'F': axis = 0; break;  // F is the rank-1 flip alias
      case 'V': axis = 1; break;
      case 'D': axis = 2; break;
      default:
        throw MoveParseError(index, "expected axis letter H, V, D or F in '" +
                                        tok + "'");
    }
    if (tok.size() < 2 || tok[1] == '0')
      throw MoveParseError(index, "expected a positive depth in '" + tok + "'");
    int depth = 0;
    for (std::size_t k = 1; k < tok.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(tok[k])))
        throw MoveParseError(index, "malformed move token '" + tok + "'");
      depth = depth * 10 + (tok[k] - '0');
      if (depth > 1'000'000)
        throw MoveParseError(index, "depth out of range in '" + tok + "'");
    }
    moves.push_back(Move{axis, depth});
  }
  return moves;
}

std::string write_moves(const MoveSequence& moves) {
  std::string out;
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (i) out += ' ';
    out += to_string(moves[i]);
  }
  return out;
}

std::string to_string(Mode mode) {
  return mode == Mode::Signed ? "signed" : "unsigned";
}

std::string to_string(Parity parity) {
  return parity == Parity::Even ? "Even" : "Odd";
}

namespace {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Solved: return "solved";
    case SolveStatus::ProvenUnreachable: return "unreachable";
    case SolveStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

json dims_json(const std::vector<int>& dims) { return json(dims); }

json base_doc(const char* kind) {
  json doc;
  doc["format_version"] = 1;
  doc["kind"] = kind;
  return doc;
}

std::string dims_text(const std::vector<int>& dims) {
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(dims[i]);
  }
  return s;
}

std::vector<int> cells_signed(const MultiArray& ma) {
  std::vector<int> vals;
  vals.reserve(static_cast<size_t>(ma.cell_count()));
  for (const Token& t : ma.cells()) vals.push_back(signed_value(t));
  return vals;
}

}  // namespace

std::string emit_solution(const Solution& s, const SolutionContext& ctx,
                          ResultFormat format) {
  const double elapsed = ctx.deterministic ? 0.0 : s.elapsed_ms;
  if (format == ResultFormat::Machine) {
    json doc = base_doc("solution");
    doc["dims"] = dims_json(ctx.dims);
    doc["mode"] = to_string(ctx.mode);
    doc["solver"] = ctx.solver;
    doc["status"] = status_name(s.status);
    doc["moves"] = write_moves(s.moves);
    doc["length"] = s.length();
    doc["optimal"] = s.optimal;
    doc["nodes_expanded"] = s.nodes_expanded;
    doc["elapsed_ms"] = elapsed;
    if (ctx.seed) doc["seed"] = *ctx.seed;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "status: " << status_name(s.status) << '\n'
      << "dims: " << dims_text(ctx.dims) << '\n'
      << "mode: " << to_string(ctx.mode) << '\n'
      << "solver: " << ctx.solver << '\n';
  if (s.solved()) {
    out << "length: " << s.length() << '\n'
        << "moves: " << write_moves(s.moves) << '\n'
        << "optimal: " << (s.optimal ? "true" : "false") << '\n';
  }
  out << "nodes_expanded: " << s.nodes_expanded << '\n'
      << "elapsed_ms: " << elapsed << '\n';
  return out.str();
}

std::string emit_verification(const VerifyResult& v,
                              const std::vector<int>& dims, Mode mode,
                              const MoveSequence& moves, ResultFormat format) {
  if (format == ResultFormat::Machine) {
    json doc = base_doc("verify");
    doc["dims"] = dims_json(dims);
    doc["mode"] = to_string(mode);
    doc["moves"] = write_moves(moves);
    doc["valid"] = v.valid;
    if (!v.valid) doc["failed_index"] = *v.first_invalid;
    doc["solved"] = v.solved;
    doc["final_cells"] = cells_signed(v.final);
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "valid: " << (v.valid ? "true" : "false") << '\n';
  if (!v.valid) out << "failed_index: " << *v.first_invalid << '\n';
  out << "solved: " << (v.solved ? "true" : "false") << '\n'
      << "final:\n"
      << write_instance(v.final);
  return out.str();
}

std::string emit_reachability(const Reachability& r,
                              const std::vector<int>& dims, Mode mode,
                              ResultFormat format) {
  if (format == ResultFormat::Machine) {
    json doc = base_doc("reachability");
    doc["dims"] = dims_json(dims);
    doc["mode"] = to_string(mode);
    doc["verdict"] = to_string(r.verdict);
    doc["parity"] = r.parity ? json(to_string(*r.parity)) : json(nullptr);
    doc["reason"] = r.reason;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "verdict: " << to_string(r.verdict) << '\n';
  if (r.parity) out << "parity: " << to_string(*r.parity) << '\n';
  out << "reason: " << r.reason << '\n';
  return out.str();
}

std::string emit_orbit(const OrbitReport& report, ResultFormat format,
                       bool deterministic) {
  const double elapsed = deterministic ? 0.0 : report.elapsed_ms;
  if (format == ResultFormat::Machine) {
    json doc = base_doc("orbit");
    doc["dims"] = dims_json(report.dims);
    doc["mode"] = to_string(report.mode);
    doc["orbit_size"] = report.orbit_size;
    doc["eccentricity"] = report.eccentricity;
    json hist = json::array();
    for (const auto& [d, c] : report.histogram) hist.push_back({d, c});
    doc["histogram"] = hist;
    doc["complete"] = report.complete;
    doc["nodes_expanded"] = report.nodes_expanded;
    doc["elapsed_ms"] = elapsed;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "dims: " << dims_text(report.dims) << '\n'
      << "mode: " << to_string(report.mode) << '\n'
      << "orbit_size: " << report.orbit_size << '\n'
      << "eccentricity: " << report.eccentricity << '\n'
      << "complete: " << (report.complete ? "true" : "false") << '\n'
      << "histogram:\n";
  for (const auto& [d, c] : report.histogram)
    out << "  " << d << ' ' << c << '\n';
  out << "nodes_expanded: " << report.nodes_expanded << '\n'
      << "elapsed_ms: " << elapsed << '\n';
  return out.str();
}

std::string emit_instance_result(const MultiArray& ma, std::uint64_t seed,
                                 const std::string& policy,
                                 ResultFormat format) {
  if (format == ResultFormat::Machine) {
    json doc = base_doc("instance");
    doc["dims"] = dims_json(ma.dims());
    doc["mode"] = to_string(ma.mode());
    doc["seed"] = seed;
    doc["policy"] = policy;
    doc["cells"] = cells_signed(ma);
    return doc.dump() + "\n";
  }
  return write_instance(ma);
}

std::string emit_theorem(const TheoremReport& report, ResultFormat format) {
  auto status_name = [](CheckStatus s) {
    return s == CheckStatus::Pass ? "PASS"
                                  : (s == CheckStatus::Fail ? "FAIL" : "SKIP");
  };
  if (format == ResultFormat::Machine) {
    json doc = base_doc("theorem");
    json rows = json::array();
    for (const TheoremRow& row : report.rows) {
      json r;
      r["dims"] = dims_json(row.dims);
      r["status"] = status_name(row.status);
      r["orbit_size"] = row.orbit_size;
      r["expected"] = row.expected;
      r["note"] = row.note;
      rows.push_back(std::move(r));
    }
    doc["rows"] = rows;
    doc["all_pass"] = report.all_pass;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  for (const TheoremRow& row : report.rows) {
    out << status_name(row.status) << ' ' << dims_text(row.dims)
        << ": orbit " << row.orbit_size << " expected " << row.expected;
    if (!row.note.empty()) out << " (" << row.note << ")";
    out << '\n';
  }
  out << "all_pass: " << (report.all_pass ? "true" : "false") << '\n';
  return out.str();
}

std::string emit_parity_walk(const ParityWalkReport& report,
                             ResultFormat format) {
  if (format == ResultFormat::Machine) {
    json doc = base_doc("parity_walk");
    doc["dims"] = dims_json(report.dims);
    doc["steps"] = report.steps;
    doc["seed"] = report.seed;
    json gens = json::array();
    for (const auto& [mv, parity] : report.generator_parities)
      gens.push_back({flipsort::to_string(mv), to_string(parity)});
    doc["generators"] = gens;
    doc["generators_all_even"] = report.generators_all_even;
    doc["walk_all_even"] = report.walk_all_even;
    if (report.first_violation_step)
      doc["first_violation_step"] = *report.first_violation_step;
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  out << "dims: " << dims_text(report.dims) << '\n';
  for (const auto& [mv, parity] : report.generator_parities)
    out << "generator " << flipsort::to_string(mv) << ": " << to_string(parity)
        << '\n';
  out << "generators_all_even: "
      << (report.generators_all_even ? "true" : "false") << '\n'
      << "steps: " << report.steps << '\n'
      << "walk_all_even: " << (report.walk_all_even ? "true" : "false") << '\n';
  if (report.first_violation_step)
    out << "first_violation_step: " << *report.first_violation_step << '\n';
  return out.str();
}

}  // namespace flipsort
