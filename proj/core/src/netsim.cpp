#include "pirgraph/netsim.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <future>
#include <istream>
#include <sstream>

#include "pirgraph/wire.hpp"

namespace pir::net {

namespace {

void close_fd(int& fd) {
    if (fd >= 0) {
        ::close(fd);
        fd = -1;
    }
}

bool send_all(int fd, const std::vector<std::uint8_t>& data) {
    std::size_t sent = 0;
    while (sent < data.size()) {
        const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) return false;
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

// reads exactly one frame; returns false on clean close / timeout
bool recv_frame(int fd, wire::Frame& out, std::uint64_t* bytes_read = nullptr) {
    std::vector<std::uint8_t> buf;
    std::uint8_t chunk[4096];
    std::size_t consumed = 0;
    while (true) {
        if (wire::decode_frame(buf, out, consumed)) {
            if (bytes_read != nullptr) *bytes_read = consumed;
            return true;
        }
        const ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
        if (n <= 0) return false;
        buf.insert(buf.end(), chunk, chunk + n);
        if (buf.size() > wire::kMaxPayload + 5) throw wire::WireError("frame too large");
    }
}

void set_timeout(int fd, int seconds) {
    timeval tv{};
    tv.tv_sec = seconds;
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
    ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof(tv));
}

} // namespace

std::vector<Endpoint> read_endpoints(std::istream& in) {
    std::vector<Endpoint> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto colon = line.rfind(':');
        if (colon == std::string::npos) throw NetError("endpoint line needs host:port");
        Endpoint ep;
        ep.host = line.substr(first, colon - first);
        ep.port = static_cast<std::uint16_t>(std::stoi(line.substr(colon + 1)));
        out.push_back(ep);
    }
    return out;
}

ServerListener::ServerListener(std::shared_ptr<const Scheme> scheme, int server,
                               const FileAssignment& files, std::uint16_t port,
                               int max_sessions)
    : scheme_(std::move(scheme)),
      server_(server),
      files_(scheme_->graph(), server, files),
      max_sessions_(max_sessions) {
    scheme_->check_files(files);
    if (server < 1 || server > scheme_->num_servers())
        throw NetError("server index out of range");

    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw NetError("socket() failed");
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        close_fd(listen_fd_);
        throw NetError("bind() failed");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
    if (::listen(listen_fd_, 16) != 0) {
        close_fd(listen_fd_);
        throw NetError("listen() failed");
    }
    thread_ = std::thread([this] { run(); });
}

ServerListener::~ServerListener() { stop(); }

void ServerListener::stop() {
    if (!stopping_.exchange(true)) {
        ::shutdown(listen_fd_, SHUT_RDWR);
        close_fd(listen_fd_);
    }
    if (thread_.joinable()) thread_.join();
}

void ServerListener::wait() {
    if (thread_.joinable()) thread_.join();
}

void ServerListener::run() {
    while (!stopping_.load()) {
        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) break;  // listener closed
        set_timeout(fd, 10);
        handle_connection(fd);
        ::close(fd);
        const int done = ++sessions_;
        if (max_sessions_ > 0 && done >= max_sessions_) break;
    }
}

void ServerListener::handle_connection(int fd) {
    wire::Frame frame;
    try {
        if (!recv_frame(fd, frame)) return;
    } catch (const wire::WireError&) {
        return;  // oversized or garbled framing: drop the connection
    }

    wire::Frame reply;
    try {
        if (frame.tag != wire::kTagQuery) throw wire::WireError("expected a query frame");
        const Query q = wire::decode_query(frame.payload);
        const BitVec bits = scheme_->answer(server_, q, files_);
        reply.tag = wire::kTagAnswer;
        reply.payload = wire::encode_answer_bits(bits);
    } catch (const std::exception& e) {
        reply.tag = wire::kTagError;
        const char* what = e.what();
        reply.payload.assign(what, what + std::strlen(what));
    }
    send_all(fd, wire::encode_frame(reply));
}

namespace {

struct Exchange {
    BitVec bits;
    SessionLog::PerServer stats;
};

Exchange exchange_one(const Endpoint& ep, const Query& query) {
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) throw NetError("socket() failed");
    set_timeout(fd, 10);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(ep.port);
    if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd);
        throw NetError("bad endpoint address: " + ep.host);
    }
    if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        ::close(fd);
        throw NetError("endpoint unreachable: " + ep.host + ":" + std::to_string(ep.port));
    }

    Exchange ex;
    const auto out = wire::encode_frame({wire::kTagQuery, wire::encode_query(query)});
    if (!send_all(fd, out)) {
        ::close(fd);
        throw NetError("send failed");
    }
    ex.stats.uploaded_bytes = out.size();

    wire::Frame reply;
    std::uint64_t got = 0;
    const bool ok = recv_frame(fd, reply, &got);
    ::close(fd);
    if (!ok) throw NetError("connection closed before an answer arrived");
    ex.stats.downloaded_bytes = got;
    if (reply.tag == wire::kTagError)
        throw NetError("server error: " +
                       std::string(reply.payload.begin(), reply.payload.end()));
    if (reply.tag != wire::kTagAnswer) throw NetError("unexpected frame tag");
    ex.bits = wire::decode_answer_bits(reply.payload);
    ex.stats.answer_bits = ex.bits.size();
    return ex;
}

} // namespace

std::uint64_t SessionLog::total_answer_bits() const {
    std::uint64_t t = 0;
    for (const auto& s : servers) t += s.answer_bits;
    return t;
}

std::uint64_t SessionLog::total_uploaded_bytes() const {
    std::uint64_t t = 0;
    for (const auto& s : servers) t += s.uploaded_bytes;
    return t;
}

std::uint64_t SessionLog::total_downloaded_bytes() const {
    std::uint64_t t = 0;
    for (const auto& s : servers) t += s.downloaded_bytes;
    return t;
}

RetrieveResult retrieve(const Scheme& scheme, const std::vector<Endpoint>& endpoints,
                        int theta, Rng& rng, bool concurrent) {
    if (static_cast<int>(endpoints.size()) != scheme.num_servers())
        throw NetError("need one endpoint per server");
    const auto start = std::chrono::steady_clock::now();

    RetrieveResult res;
    res.queries = scheme.make_queries(theta, rng);
    const int n = scheme.num_servers();
    std::vector<Exchange> exchanges(static_cast<std::size_t>(n));

    if (concurrent) {
        std::vector<std::future<Exchange>> futs;
        for (int s = 1; s <= n; ++s) {
            futs.push_back(std::async(std::launch::async, exchange_one,
                                      endpoints[static_cast<std::size_t>(s) - 1],
                                      res.queries.per_server[static_cast<std::size_t>(s) - 1]));
        }
        for (int s = 1; s <= n; ++s)
            exchanges[static_cast<std::size_t>(s) - 1] = futs[static_cast<std::size_t>(s) - 1].get();
    } else {
        for (int s = 1; s <= n; ++s)
            exchanges[static_cast<std::size_t>(s) - 1] =
                exchange_one(endpoints[static_cast<std::size_t>(s) - 1],
                             res.queries.per_server[static_cast<std::size_t>(s) - 1]);
    }

    AnswerSet answers;
    for (auto& ex : exchanges) {
        res.log.servers.push_back(ex.stats);
        answers.per_server.push_back(std::move(ex.bits));
    }
    res.log.bits_match_analytic =
        res.log.total_answer_bits() == static_cast<std::uint64_t>(scheme.total_answer_bits());

    try {
        res.file = scheme.reconstruct(res.queries, answers);
    } catch (const std::exception& e) {
        throw NetError(std::string("reconstruction mismatch: ") + e.what());
    }
    res.log.elapsed = std::chrono::steady_clock::now() - start;
    return res;
}

} // namespace pir::net
