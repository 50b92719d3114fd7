// Command-line front end for the Diophantine key-exchange library: key
// generation, the three-message handshake over files or a TCP stream, a
// local demo, and the exhaustive-attack experiment harness.

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "diokex/experiment.hpp"
#include "diokex/protocol.hpp"

namespace {

namespace fs = std::filesystem;
using namespace diokex;

// Exit codes, kept stable for scripted experiments.
constexpr int kExitOk = 0;
constexpr int kExitKeygen = 2;
constexpr int kExitReject = 3;
constexpr int kExitCorrupt = 4;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitSoftware = 70;

struct Options {
    std::string mode = "integer";
    std::string w;
    std::size_t m = 2;
    unsigned deg = 3;
    std::size_t n = 2;
    std::size_t budget = 2;
    std::uint64_t seed = 1;
    long box = 20;
    std::uint64_t ceiling = 100'000'000;
    unsigned threads = 0;
    std::size_t trials = 10;
    bool golden = false;
    bool timing = false;
    std::string out = ".";
    std::string in;
    std::string key;
    std::string listen;
    std::string connect;
};

std::string read_first_line(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    std::string line;
    std::getline(in, line);
    return line;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

bool finite_mode(const Options& opt) {
    if (opt.mode == "finite") return true;
    if (opt.mode == "integer") return false;
    throw std::invalid_argument("--mode must be 'integer' or 'finite'");
}

KeygenParams keygen_params(const Options& opt) {
    KeygenParams params;
    params.varcount = opt.m;
    params.relation_degree = opt.deg;
    params.finite = finite_mode(opt);
    if (!opt.w.empty()) {
        if (!params.finite)
            throw std::invalid_argument("--w requires --mode finite");
        params.modulus = mpz_class(opt.w);
    }
    return params;
}

SenderParams sender_params(const Options& opt) {
    SenderParams params;
    params.chain_length = opt.n;
    params.g_degree = opt.deg;
    params.representation_budget = opt.budget;
    return params;
}

// ---------------------------------------------------------------------------
// Minimal line-oriented TCP transport for the three-message handshake.

class LineSocket {
public:
    explicit LineSocket(int fd) : fd_(fd) {}
    LineSocket(const LineSocket&) = delete;
    LineSocket& operator=(const LineSocket&) = delete;
    ~LineSocket() {
        if (fd_ >= 0) ::close(fd_);
    }

    void send_line(const std::string& line) {
        std::string framed = line + "\n";
        std::size_t sent = 0;
        while (sent < framed.size()) {
            const ssize_t n = ::write(fd_, framed.data() + sent, framed.size() - sent);
            if (n <= 0) throw std::runtime_error("socket write failed");
            sent += static_cast<std::size_t>(n);
        }
    }

    std::string recv_line() {
        std::string line;
        char ch;
        while (true) {
            const ssize_t n = ::read(fd_, &ch, 1);
            if (n <= 0) throw std::runtime_error("socket closed mid-message");
            if (ch == '\n') return line;
            line.push_back(ch);
        }
    }

private:
    int fd_;
};

LineSocket accept_peer(std::uint16_t port) {
    const int server = ::socket(AF_INET, SOCK_STREAM, 0);
    if (server < 0) throw std::runtime_error("socket() failed");
    const int enable = 1;
    ::setsockopt(server, SOL_SOCKET, SO_REUSEADDR, &enable, sizeof(enable));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(server, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(server);
        throw std::runtime_error("bind failed on port " + std::to_string(port));
    }
    if (::listen(server, 1) != 0) {
        ::close(server);
        throw std::runtime_error("listen failed");
    }
    const int peer = ::accept(server, nullptr, nullptr);
    ::close(server);
    if (peer < 0) throw std::runtime_error("accept failed");
    return LineSocket(peer);
}

LineSocket dial_peer(const std::string& endpoint) {
    const std::size_t colon = endpoint.rfind(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("--connect needs HOST:PORT");
    const std::string host = endpoint.substr(0, colon);
    const std::string port = endpoint.substr(colon + 1);
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &found) != 0 || !found)
        throw std::runtime_error("cannot resolve " + endpoint);
    int fd = ::socket(found->ai_family, found->ai_socktype, found->ai_protocol);
    int rc = fd < 0 ? -1 : ::connect(fd, found->ai_addr, found->ai_addrlen);
    ::freeaddrinfo(found);
    if (rc != 0) {
        if (fd >= 0) ::close(fd);
        throw std::runtime_error("cannot connect to " + endpoint);
    }
    return LineSocket(fd);
}

// ---------------------------------------------------------------------------
// Subcommands

RecipientKeyMaterial make_recipient(const Options& opt, Rng& rng) {
    if (opt.golden)
        return RecipientKeyMaterial{golden_recipient_key(), golden_relation()};
    return recipient_keygen(keygen_params(opt), rng);
}

SenderKeyMaterial make_sender(const Relation& rel, const Options& opt, Rng& rng) {
    if (opt.golden) {
        Polynomial g = golden_g();
        OperatorChain chain = golden_chain();
        Polynomial h = chain_apply_symbolic(chain, g, rel, rng, 0);
        return SenderKeyMaterial{SenderPrivateKey{chain, g}, g, h};
    }
    return sender_respond(rel, sender_params(opt), rng);
}

int cmd_keygen(const Options& opt) {
    Rng rng(opt.seed);
    const RecipientKeyMaterial material = make_recipient(opt, rng);
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    const std::string f_line = encode_f_message(material.rel);
    write_file(dir / "recipient.key", encode_recipient_key(material.priv) + "\n");
    write_file(dir / "f.msg", f_line + "\n");
    std::cout << f_line << "\n";
    return kExitOk;
}

int cmd_respond(const Options& opt) {
    Rng rng(opt.seed);
    const Relation rel = parse_f_message(read_first_line(opt.in));
    const SenderKeyMaterial material = make_sender(rel, opt, rng);
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    const std::string gh_line = encode_gh_message(material.g, material.h);
    write_file(dir / "sender.key", encode_sender_key(material.priv) + "\n");
    write_file(dir / "gh.msg", gh_line + "\n");
    std::cout << gh_line << "\n";
    return kExitOk;
}

int cmd_reply(const Options& opt) {
    const RecipientPrivateKey key = parse_recipient_key(read_first_line(opt.key));
    const auto [g, h] = parse_gh_message(read_first_line(opt.in), key.spec);
    const RecipientReply reply = recipient_reply(key, g, h);
    const fs::path dir(opt.out);
    fs::create_directories(dir);
    const std::string p_line = encode_p_message(reply.p);
    write_file(dir / "p.msg", p_line + "\n");
    write_file(dir / "secret.txt", reply.secret.value.get_str() + "\n");
    std::cout << p_line << "\n";
    return kExitOk;
}

int cmd_recover(const Options& opt) {
    const SenderPrivateKey key = parse_sender_key(read_first_line(opt.key));
    const mpz_class p = parse_p_message(read_first_line(opt.in));
    const SharedSecret secret = sender_finish(key, p);
    std::cout << secret.value.get_str() << "\n";
    return kExitOk;
}

int demo_listen(const Options& opt) {
    Rng rng(opt.seed);
    const RecipientKeyMaterial material = make_recipient(opt, rng);
    const auto port = static_cast<std::uint16_t>(std::stoul(opt.listen));
    std::cerr << "listening on port " << port << "\n";
    LineSocket peer = accept_peer(port);
    const std::string f_line = encode_f_message(material.rel);
    peer.send_line(f_line);
    std::cout << f_line << "\n";
    const std::string gh_line = peer.recv_line();
    std::cout << gh_line << "\n";
    const auto [g, h] = parse_gh_message(gh_line, material.priv.spec);
    const RecipientReply reply = recipient_reply(material.priv, g, h);
    const std::string p_line = encode_p_message(reply.p);
    peer.send_line(p_line);
    std::cout << p_line << "\n";
    std::cout << "shared secret: " << reply.secret.value.get_str() << "\n";
    return kExitOk;
}

int demo_connect(const Options& opt) {
    Rng rng(opt.seed);
    LineSocket peer = dial_peer(opt.connect);
    const std::string f_line = peer.recv_line();
    std::cout << f_line << "\n";
    const Relation rel = parse_f_message(f_line);
    const SenderKeyMaterial material = make_sender(rel, opt, rng);
    const std::string gh_line = encode_gh_message(material.g, material.h);
    peer.send_line(gh_line);
    std::cout << gh_line << "\n";
    const std::string p_line = peer.recv_line();
    std::cout << p_line << "\n";
    const SharedSecret secret = sender_finish(material.priv, parse_p_message(p_line));
    std::cout << "shared secret: " << secret.value.get_str() << "\n";
    return kExitOk;
}

int cmd_demo(const Options& opt) {
    if (!opt.listen.empty()) return demo_listen(opt);
    if (!opt.connect.empty()) return demo_connect(opt);
    Rng rng(opt.seed);
    const ExchangeOutcome outcome =
        opt.golden
            ? golden_exchange()
            : run_exchange(ExchangeParams{keygen_params(opt), sender_params(opt)}, rng);
    std::cout << outcome.transcript.to_text();
    std::cout << "shared secret: " << outcome.recipient_secret.value.get_str()
              << " == " << outcome.sender_secret.value.get_str() << "\n";
    if (outcome.recipient_secret.value != outcome.sender_secret.value) {
        std::cerr << "secret mismatch\n";
        return kExitSoftware;
    }
    return kExitOk;
}

int cmd_attack(const Options& opt) {
    std::vector<TrialRecord> rows;
    if (opt.golden) {
        rows.push_back(
            golden_attack_trial(opt.box, opt.ceiling, opt.threads, opt.timing));
    } else {
        ExperimentParams params;
        params.trials = opt.trials;
        params.finite = finite_mode(opt);
        params.varcount = opt.m;
        params.box_halfwidth = opt.box;
        params.ceiling = opt.ceiling;
        params.threads = opt.threads;
        params.seed = opt.seed;
        params.measure_time = opt.timing;
        rows = attack_experiment(params);
    }
    if (opt.out == "." || opt.out == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(opt.out);
        if (!out) throw std::runtime_error("cannot write " + opt.out);
        write_csv(out, rows);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Key exchange over Diophantine relations with trapdoor operator chains"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", opt.seed, "rng seed; fixes all randomness");
        cmd->add_option("--out", opt.out, "output directory (or file for attack)");
        cmd->add_flag("--golden", opt.golden, "use the built-in worked instance");
    };
    auto add_ring = [&](CLI::App* cmd) {
        cmd->add_option("--mode", opt.mode, "integer | finite")
            ->check(CLI::IsMember({"integer", "finite"}));
        cmd->add_option("--w", opt.w, "modulus for finite mode (squarefree)");
        cmd->add_option("--m", opt.m, "variable count")->check(CLI::Range(2, 16));
        cmd->add_option("--deg", opt.deg, "degree bound")->check(CLI::Range(2, 12));
    };
    auto add_sender = [&](CLI::App* cmd) {
        cmd->add_option("--n", opt.n, "chain length")->check(CLI::Range(1, 8));
        cmd->add_option("--budget", opt.budget, "representation blinding terms");
    };

    CLI::App* keygen = app.add_subcommand("keygen", "emit a relation with a planted root");
    add_common(keygen);
    add_ring(keygen);

    CLI::App* respond = app.add_subcommand("respond", "answer an F message with (g, h)");
    add_common(respond);
    add_sender(respond);
    respond->add_option("--deg", opt.deg, "carrier degree bound")->check(CLI::Range(1, 12));
    respond->add_option("--in", opt.in, "F message file")->required();

    CLI::App* reply = app.add_subcommand("reply", "evaluate (g, h) at the private point");
    add_common(reply);
    reply->add_option("--in", opt.in, "GH message file")->required();
    reply->add_option("--key", opt.key, "recipient private key file")->required();

    CLI::App* recover = app.add_subcommand("recover", "invert the chain on a P message");
    recover->add_option("--in", opt.in, "P message file")->required();
    recover->add_option("--key", opt.key, "sender private key file")->required();

    CLI::App* demo = app.add_subcommand("demo", "full exchange, local or over TCP");
    add_common(demo);
    add_ring(demo);
    add_sender(demo);
    demo->add_option("--listen", opt.listen, "act as recipient on this port");
    demo->add_option("--connect", opt.connect, "act as sender, HOST:PORT");

    CLI::App* attack = app.add_subcommand("attack", "exhaustive-search experiments, CSV out");
    add_common(attack);
    add_ring(attack);
    attack->add_option("--trials", opt.trials, "number of exchanges to attack");
    attack->add_option("--box", opt.box, "attack box halfwidth (integer mode)");
    attack->add_option("--ceiling", opt.ceiling, "points-scanned budget");
    attack->add_option("--threads", opt.threads, "worker threads (0 = auto)");
    attack->add_flag("--timing", opt.timing, "record wall_ms (breaks byte determinism)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (keygen->parsed()) return cmd_keygen(opt);
        if (respond->parsed()) return cmd_respond(opt);
        if (reply->parsed()) return cmd_reply(opt);
        if (recover->parsed()) return cmd_recover(opt);
        if (demo->parsed()) return cmd_demo(opt);
        if (attack->parsed()) return cmd_attack(opt);
        return kExitUsage;
    } catch (const KeygenFailed& e) {
        std::cerr << "keygen failed: " << e.what() << "\n";
        return kExitKeygen;
    } catch (const RelationRejected& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return kExitReject;
    } catch (const TranscriptCorrupted& e) {
        std::cerr << "transcript corrupted: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const DimensionError& e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSoftware;
    }
}
