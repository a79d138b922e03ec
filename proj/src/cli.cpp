#include "quizboard/cli.hpp"

#include <pthread.h>

#include <csignal>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "quizboard/bank_io.hpp"
#include "quizboard/error.hpp"
#include "quizboard/http_frontend.hpp"
#include "quizboard/json_io.hpp"
#include "quizboard/service.hpp"
#include "quizboard/sheet.hpp"
#include "quizboard/sim.hpp"

namespace quizboard {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream bytes;
  bytes << in.rdbuf();
  return bytes.str();
}

struct CompileArgs {
  std::string in;
  std::vector<std::string> languages;
  std::string out;
  std::string assets;
  std::string name = "questions";
};

struct SimulateArgs {
  std::string game;
  std::string speed = "normal";
  std::uint64_t games = 1000;
  std::uint64_t seed = 1;
  int teams = 2;
  std::vector<double> p;
  bool compare = false;
  bool json = false;
  unsigned threads = 0;
  std::uint64_t action_cap = kDefaultActionCap;
};

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string banks_dir;
  std::string boards_dir;
  long session_ttl = 7200;
};

struct ReplayArgs {
  std::string transcript;
  std::string banks_dir;
  std::string boards_dir;
};

ParsedSheet parse_sheet_file(const std::string& path, std::ostream& err) {
  ParsedSheet sheet = parse_sheet(read_file(path));
  for (const auto& issue : sheet.issues) {
    err << path << ":" << issue.row << ": " << to_string(issue.kind) << ": " << issue.message << "\n";
  }
  return sheet;
}

int bank_compile(const CompileArgs& a, std::ostream& out, std::ostream& err) {
  ParsedSheet sheet = parse_sheet_file(a.in, err);
  if (!sheet.ok()) {
    err << "error: " << sheet.issues.size() << " problem(s) in " << a.in << "; nothing written\n";
    return 1;
  }
  BankWriteOptions options;
  options.out_dir = a.out;
  options.assets_root = a.assets.empty() ? std::filesystem::path(a.in).parent_path() : std::filesystem::path(a.assets);
  options.bank_name = a.name;
  options.languages = a.languages;
  const auto written = write_banks(sheet.records, options);
  for (const auto& file : written.bank_files) out << "wrote " << file.string() << "\n";
  out << written.images.size() << " image(s) copied\n";
  return 0;
}

int bank_validate(const std::string& in, std::ostream& out, std::ostream& err) {
  ParsedSheet sheet = parse_sheet_file(in, err);
  if (!sheet.ok()) {
    err << "error: " << sheet.issues.size() << " problem(s) in " << in << "\n";
    return 1;
  }
  std::map<std::string, std::set<std::string>> topics;
  for (const auto& r : sheet.records) topics[r.language].insert(r.topic_id);
  out << sheet.records.size() << " question(s) ok";
  for (const auto& [language, ids] : topics) out << "; " << language << ": " << ids.size() << " topic(s)";
  out << "\n";
  return 0;
}

int simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const auto kind = parse_game_kind(a.game);
  const auto speed = parse_speed(a.speed);
  if (!kind || !speed) throw Error(ErrorCode::InvalidConfig, "unknown game or speed");
  const AnswerPolicy policy = a.p.empty()              ? AnswerPolicy::always_correct()
                              : a.p.size() == 1        ? AnswerPolicy::bernoulli_all(a.p[0], a.teams)
                                                       : AnswerPolicy::bernoulli(a.p);
  SimOptions options{a.threads, a.action_cap};
  auto board = std::make_shared<const BoardDefinition>(default_board(*kind));
  const auto config = simulation_config(*kind, *speed, a.teams, a.seed);
  const auto bank = synthetic_bank(config);

  if (a.compare) {
    auto fast = config;
    fast.speed = Speed::Fast;
    auto normal = config;
    normal.speed = Speed::Normal;
    const auto cmp = compare_arms(normal, fast, board, bank, policy, a.games, options);
    const double fast_over_normal = cmp.variant.rolls.mean / cmp.baseline.rolls.mean;
    if (a.json) {
      nlohmann::json doc = {{"normal", report_to_json(cmp.baseline)},
                            {"fast", report_to_json(cmp.variant)},
                            {"fast_over_normal", fast_over_normal}};
      out << doc.dump(2) << "\n";
    } else {
      out << report_table(cmp.baseline) << "\n" << report_table(cmp.variant) << "\n";
      out << "mean rolls fast/normal: " << fast_over_normal << "\n";
    }
    err << "elapsed " << cmp.baseline.elapsed_seconds + cmp.variant.elapsed_seconds << " s\n";
    return 0;
  }

  const auto report = run_sim(config, board, bank, policy, a.games, options);
  if (a.json) {
    out << report_to_json(report).dump(2) << "\n";
  } else {
    out << report_table(report);
  }
  err << "elapsed " << report.elapsed_seconds << " s\n";
  return 0;
}

int serve(const ServeArgs& a, std::ostream& out) {
  if (a.session_ttl <= 0) throw Error(ErrorCode::InvalidConfig, "--session-ttl must be positive");
  GameService service(Catalog::load(a.banks_dir, a.boards_dir), std::chrono::seconds(a.session_ttl));
  HttpFrontend frontend(service, a.banks_dir);
  const int port = frontend.bind(a.host, a.port);
  if (port < 0) throw Error(ErrorCode::Io, "cannot bind " + a.host + ":" + std::to_string(a.port));

  // Signals are taken synchronously by a dedicated thread, so they must be
  // blocked before any other thread starts.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread waiter([&] {
    int received = 0;
    sigwait(&signals, &received);
    frontend.stop();
  });

  std::mutex sweep_mutex;
  std::condition_variable_any sweep_wake;
  std::jthread sweeper([&](std::stop_token stop) {
    std::unique_lock lock(sweep_mutex);
    while (!sweep_wake.wait_for(lock, stop, std::chrono::seconds(60), [] { return false; })) {
      service.expire_idle();
    }
  });

  out << "listening on http://" << a.host << ":" << port << std::endl;
  frontend.listen();
  sweeper.request_stop();
  // listen() may also return because the socket failed; wake the waiter.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  pthread_sigmask(SIG_UNBLOCK, &signals, nullptr);
  return 0;
}

int replay_transcript(const ReplayArgs& a, std::ostream& out) {
  const auto doc = nlohmann::json::parse(read_file(a.transcript), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::BadTranscript, a.transcript + " is not valid JSON");
  const Transcript transcript = transcript_from_json(doc);
  const auto boards = load_boards(a.boards_dir);
  std::shared_ptr<const QuestionBank> bank;
  if (a.banks_dir.empty()) {
    bank = synthetic_bank(transcript.config);
  } else {
    const auto banks = load_bank_dir(a.banks_dir);
    auto it = banks.find(transcript.config.language);
    if (it == banks.end()) {
      throw Error(ErrorCode::EmptyBank, "no bank for language '" + transcript.config.language + "' in " + a.banks_dir);
    }
    bank = it->second;
  }
  const GameState state = replay(transcript, boards.at(transcript.config.kind), bank);
  out << state_to_json(state).dump(2) << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quiz board games: question banks, simulation and game server", "quizboard"};
  app.require_subcommand(1);

  auto* bank = app.add_subcommand("bank", "Question bank tools");
  bank->require_subcommand(1);

  CompileArgs compile_args;
  auto* compile = bank->add_subcommand("compile", "Compile a question sheet into bank files");
  compile->add_option("--in", compile_args.in, "Sheet exported as CSV")->required()->check(CLI::ExistingFile);
  compile->add_option("--lang", compile_args.languages, "Only compile these languages (repeatable)");
  compile->add_option("--out", compile_args.out, "Banks directory")->required();
  compile->add_option("--assets", compile_args.assets, "Directory image_ref paths are relative to (default: sheet's)");
  compile->add_option("--name", compile_args.name, "Bank file name without extension");

  std::string validate_in;
  auto* validate = bank->add_subcommand("validate", "Check a question sheet without writing anything");
  validate->add_option("--in", validate_in, "Sheet exported as CSV")->required()->check(CLI::ExistingFile);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Play games headlessly and report statistics");
  sim->add_option("--game", sim_args.game, "goose, parchis or motor")
      ->required()
      ->check(CLI::IsMember({"goose", "parchis", "motor"}));
  sim->add_option("--speed", sim_args.speed, "normal or fast")->check(CLI::IsMember({"normal", "fast"}));
  sim->add_option("--games", sim_args.games, "Number of games")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_args.seed, "Base seed");
  sim->add_option("--teams", sim_args.teams, "Number of teams")->check(CLI::Range(kMinTeams, kMaxTeams));
  sim->add_option("--p", sim_args.p, "Chance of a right answer; one value for all teams or one per team")
      ->check(CLI::Range(0.0, 1.0));
  sim->add_flag("--compare", sim_args.compare, "Run normal and fast on the same seeds");
  sim->add_flag("--json", sim_args.json, "Print JSON instead of a table");
  sim->add_option("--threads", sim_args.threads, "Worker threads (0: all cores)");
  sim->add_option("--action-cap", sim_args.action_cap, "Give up on a game after this many actions")
      ->check(CLI::PositiveNumber);

  ServeArgs serve_args;
  auto* srv = app.add_subcommand("serve", "Run the HTTP game server");
  srv->add_option("--host", serve_args.host, "Address to bind");
  srv->add_option("--port", serve_args.port, "Port (0: any free port)")->check(CLI::Range(0, 65535));
  srv->add_option("--banks-dir", serve_args.banks_dir, "Compiled banks directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  srv->add_option("--boards-dir", serve_args.boards_dir, "Board definitions (default: built-in boards)")
      ->check(CLI::ExistingDirectory);
  srv->add_option("--session-ttl", serve_args.session_ttl, "Idle seconds before a session is dropped");

  ReplayArgs replay_args;
  auto* rep = app.add_subcommand("replay", "Replay a transcript and print the final state");
  rep->add_option("--transcript", replay_args.transcript, "Transcript JSON")->required()->check(CLI::ExistingFile);
  rep->add_option("--banks-dir", replay_args.banks_dir, "Compiled banks (default: synthetic simulation bank)")
      ->check(CLI::ExistingDirectory);
  rep->add_option("--boards-dir", replay_args.boards_dir, "Board definitions (default: built-in boards)")
      ->check(CLI::ExistingDirectory);

  if (!args.empty() && !args[0].starts_with("-") && !app.get_subcommand_no_throw(args[0])) {
    err << "usage error: unknown subcommand '" << args[0] << "'\n" << app.help();
    return 2;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (compile->parsed()) return bank_compile(compile_args, out, err);
    if (validate->parsed()) return bank_validate(validate_in, out, err);
    if (sim->parsed()) return simulate(sim_args, out, err);
    if (srv->parsed()) return serve(serve_args, out);
    if (rep->parsed()) return replay_transcript(replay_args, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace quizboard
