// Command-line surface over the library: transforms, channel corruption,
// codebook construction, decoding, rate tables and the verification suite.
// Payload goes to stdout (one value per line); diagnostics go to stderr.
// Exit codes: 0 success, 1 domain failure, 2 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ndcode/analysis.hpp"
#include "ndcode/channel.hpp"
#include "ndcode/nd_code.hpp"
#include "ndcode/transforms.hpp"
#include "ndcode/verify.hpp"
#include "ndcode/word.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

struct NRange {
  long start = 0, end = 0, step = 1;
};

NRange parse_n_range(const std::string& text) {
  NRange r;
  std::stringstream ss(text);
  std::string tok;
  std::vector<long> parts;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stol(tok));
  if (parts.size() == 1) {
    r.start = r.end = parts[0];
  } else if (parts.size() == 3) {
    r.start = parts[0];
    r.end = parts[1];
    r.step = parts[2];
  } else {
    throw std::invalid_argument("range must be N or START:END:STEP");
  }
  if (r.step <= 0 || r.end < r.start) throw std::invalid_argument("bad range");
  return r;
}

ndcode::Codebook load_codebook(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open codebook file: " + path);
  return ndcode::read_codebook(in);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ndcode;

  CLI::App app{"codes for noisy tandem-duplication channels"};
  app.require_subcommand(1);

  // transform
  auto* t = app.add_subcommand("transform", "apply a word transform");
  int t_q = 0, t_k = 0;
  std::string t_op, t_word;
  t->add_option("--q", t_q, "alphabet size")->required();
  t->add_option("--k", t_k, "duplication length (phi/root/mu/interleave)");
  t->add_option("--op", t_op, "one of phi|root|mu|interleave|cusum|indicator|zeta")
      ->required();
  t->add_option("word", t_word, "input word")->required();

  // corrupt
  auto* c = app.add_subcommand("corrupt", "pass a word through the duplication channel");
  int c_q = 0, c_k = 0, c_t = 1;
  bool c_noisy = false;
  std::uint64_t c_seed = 0;
  std::string c_word, c_out, c_replay;
  c->add_option("--q", c_q)->required();
  c->add_option("--k", c_k)->required();
  c->add_option("--t", c_t, "number of duplications");
  c->add_flag("--noisy", c_noisy, "make one duplication noisy");
  c->add_option("--seed", c_seed);
  c->add_option("--out", c_out, "write the event log here");
  c->add_option("--replay", c_replay, "apply the events from this log instead of sampling");
  c->add_option("word", c_word)->required();

  // codebook
  auto* b = app.add_subcommand("codebook", "enumerate a codebook");
  int b_q = 0, b_k = 0, b_n = 0;
  std::string b_mode = "best", b_params, b_out;
  std::size_t b_budget = 10'000'000;
  b->add_option("--q", b_q)->required();
  b->add_option("--k", b_k)->required();
  b->add_option("--n", b_n)->required();
  b->add_option("--mode", b_mode, "best|params");
  b->add_option("--params", b_params, "flattened residues (mode=params)");
  b->add_option("--budget", b_budget, "enumeration node budget");
  b->add_option("--out", b_out, "output codebook file")->required();

  // decode
  auto* d = app.add_subcommand("decode", "decode a received word against a codebook");
  std::string d_book, d_word;
  bool d_trace = false;
  d->add_option("--book", d_book, "codebook file")->required();
  d->add_flag("--trace", d_trace, "print the decode trace to stderr");
  d->add_option("received", d_word)->required();

  // rates
  auto* r = app.add_subcommand("rates", "rate-bound table as CSV");
  int r_k = 0;
  std::string r_q = "3,4,5", r_n = "100:400:20", r_out;
  r->add_option("--k", r_k)->required();
  r->add_option("--q", r_q, "comma-separated alphabet sizes");
  r->add_option("--n", r_n, "length range START:END:STEP");
  r->add_option("--out", r_out, "CSV file (stdout when omitted)");

  // verify
  auto* v = app.add_subcommand("verify", "run a verification scenario");
  std::string v_scenario, v_book;
  int v_q = 3, v_k = 2, v_n = 0, v_t = 2, v_threads = 1;
  std::size_t v_budget = 10'000'000;
  v->add_option("--scenario", v_scenario,
                "cone-disjoint|decode-exhaustive|guard-exhaustive|table-coverage")
      ->required();
  v->add_option("--book", v_book, "codebook file (cone/decode scenarios)");
  v->add_option("--q", v_q);
  v->add_option("--k", v_k);
  v->add_option("--n", v_n, "guard length / max start length");
  v->add_option("--t", v_t, "max duplications");
  v->add_option("--budget", v_budget);
  v->add_option("--threads", v_threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*t) {
      Word x = parse_word(t_word, t_q);
      bool needs_k = t_op == "phi" || t_op == "root" || t_op == "mu" || t_op == "interleave";
      if (needs_k && t_k < 1) throw std::invalid_argument("--k required for op " + t_op);
      if (t_op == "phi") {
        TransformPair p = phi(x, t_k);
        std::cout << to_string(p.head) << '|' << to_string(p.tail) << '\n';
      } else if (t_op == "root") {
        std::cout << to_string(root(x, t_k)) << '\n';
      } else if (t_op == "mu") {
        std::cout << to_string(mu(x, t_k)) << '\n';
      } else if (t_op == "interleave") {
        std::cout << to_string(interleave(x, t_k)) << '\n';
      } else if (t_op == "cusum") {
        std::cout << to_string(cusum(x)) << '\n';
      } else if (t_op == "indicator") {
        std::cout << to_string(indicator(x)) << '\n';
      } else if (t_op == "zeta") {
        std::cout << to_string(zeta(x)) << '\n';
      } else {
        throw std::invalid_argument("unknown op: " + t_op);
      }
    } else if (*c) {
      Word x = parse_word(c_word, c_q);
      Word out;
      std::vector<ChannelEvent> events;
      if (!c_replay.empty()) {
        std::ifstream is(c_replay);
        if (!is) throw std::invalid_argument("cannot open event log file: " + c_replay);
        events = read_event_log(is);
        out = x;
        for (const ChannelEvent& e : events) out = apply_event(out, e, c_k);
      } else {
        std::tie(out, events) = sample_channel(x, c_k, c_t, c_noisy, c_seed);
      }
      if (!c_out.empty()) {
        std::ofstream os(c_out);
        if (!os) throw std::invalid_argument("cannot open event log file: " + c_out);
        write_event_log(os, events);
      }
      std::cout << to_string(out) << '\n';
    } else if (*b) {
      Codebook book;
      if (b_mode == "best") {
        book = build_codebook_best(b_q, b_k, b_n, b_budget);
      } else if (b_mode == "params") {
        std::vector<int> flat;
        std::stringstream ss(b_params);
        int x;
        while (ss >> x) flat.push_back(x);
        if (flat.size() != static_cast<std::size_t>(2 * b_k + 9))
          throw std::invalid_argument("--params needs 2k+9 residues");
        CodeParams p;
        p.q = b_q;
        p.k = b_k;
        p.n = b_n;
        p.a.assign(flat.begin(), flat.begin() + b_k);
        p.c.assign(flat.begin() + b_k, flat.begin() + 2 * b_k);
        p.b = flat[static_cast<std::size_t>(2 * b_k)];
        for (int i = 0; i < 4; ++i) p.abar[static_cast<std::size_t>(i)] = flat[static_cast<std::size_t>(2 * b_k + 1 + i)];
        for (int i = 0; i < 4; ++i) p.bbar[static_cast<std::size_t>(i)] = flat[static_cast<std::size_t>(2 * b_k + 5 + i)];
        book = build_codebook(b_q, b_k, b_n, p, b_budget);
      } else {
        throw std::invalid_argument("unknown mode: " + b_mode);
      }
      std::ofstream os(b_out);
      if (!os) throw std::invalid_argument("cannot open output file: " + b_out);
      write_codebook(os, book);
      std::cout << book.words.size() << '\n';
    } else if (*d) {
      Codebook book = load_codebook(d_book);
      Word received = parse_word(d_word, book.params.q);
      auto [decoded, trace] = nd_decode(received, book.params);
      if (d_trace) {
        std::cerr << "delta: " << trace.delta << (trace.clean ? " (clean)" : "") << '\n';
        std::cerr << "tq_stage: " << to_string(trace.tq_stage) << '\n';
        for (std::size_t j = 0; j < trace.per_string.size(); ++j)
          std::cerr << "string " << j + 1 << ": " << trace.per_string[j] << '\n';
      }
      std::cout << to_string(decoded) << '\n';
    } else if (*r) {
      NRange range = parse_n_range(r_n);
      auto rows = rate_table(r_k, parse_int_list(r_q), range.start, range.end, range.step);
      if (r_out.empty()) {
        write_rates_csv(std::cout, rows);
      } else {
        std::ofstream os(r_out, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open output file: " + r_out);
        write_rates_csv(os, rows);
      }
    } else if (*v) {
      VerificationReport rep;
      if (v_scenario == "cone-disjoint") {
        if (v_book.empty()) throw std::invalid_argument("--book required");
        rep = verify_cone_disjoint(load_codebook(v_book), v_t, v_budget, v_threads);
      } else if (v_scenario == "decode-exhaustive") {
        if (v_book.empty()) throw std::invalid_argument("--book required");
        rep = verify_decode_exhaustive(load_codebook(v_book), v_t, v_budget, v_threads);
      } else if (v_scenario == "guard-exhaustive") {
        if (v_n <= 0) throw std::invalid_argument("--n required");
        rep = verify_guard_exhaustive(v_n);
      } else if (v_scenario == "table-coverage") {
        if (v_n <= 0) throw std::invalid_argument("--n required");
        rep = verify_table_coverage(v_q, v_k, v_n, v_t, v_budget, v_threads);
      } else {
        throw std::invalid_argument("unknown scenario: " + v_scenario);
      }
      format_report(std::cout, rep);
      return rep.passed() ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DecodeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const EnumerationLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
