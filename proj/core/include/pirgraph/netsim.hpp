#ifndef PIRGRAPH_NETSIM_HPP
#define PIRGRAPH_NETSIM_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "pirgraph/schemes.hpp"

namespace pir::net {

struct NetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Endpoint {
    std::string host = "127.0.0.1";
    std::uint16_t port = 0;
};

// "host:port" per line, server index = line number
std::vector<Endpoint> read_endpoints(std::istream& in);

// One server's loopback listener. It is handed only the files incident to
// its vertex, and it never opens connections of its own, so non-collusion
// holds by construction. One query/answer exchange per connection.
class ServerListener {
public:
    ServerListener(std::shared_ptr<const Scheme> scheme, int server,
                   const FileAssignment& files, std::uint16_t port = 0,
                   int max_sessions = 0);
    ~ServerListener();

    ServerListener(const ServerListener&) = delete;
    ServerListener& operator=(const ServerListener&) = delete;

    std::uint16_t port() const { return port_; }
    int server_index() const { return server_; }
    int sessions_handled() const { return sessions_.load(); }
    void stop();
    // blocks until max_sessions were served (requires max_sessions > 0)
    void wait();

private:
    void run();
    void handle_connection(int fd);

    std::shared_ptr<const Scheme> scheme_;
    int server_;
    IncidentFiles files_;
    int listen_fd_ = -1;
    std::uint16_t port_ = 0;
    int max_sessions_ = 0;
    std::atomic<int> sessions_{0};
    std::atomic<bool> stopping_{false};
    std::thread thread_;
};

struct SessionLog {
    struct PerServer {
        std::uint64_t uploaded_bytes = 0;    // query frame
        std::uint64_t downloaded_bytes = 0;  // answer frame
        std::uint64_t answer_bits = 0;       // payload bits, the rate currency
    };
    std::vector<PerServer> servers;
    bool bits_match_analytic = false;
    std::chrono::duration<double> elapsed{0};

    std::uint64_t total_answer_bits() const;
    std::uint64_t total_uploaded_bytes() const;
    std::uint64_t total_downloaded_bytes() const;
};

struct RetrieveResult {
    BitVec file;
    QuerySet queries;
    SessionLog log;
};

// Generates queries, performs one exchange per endpoint (optionally
// fanning out concurrently), reconstructs, and accounts for payload bits.
RetrieveResult retrieve(const Scheme& scheme, const std::vector<Endpoint>& endpoints,
                        int theta, Rng& rng, bool concurrent = false);

} // namespace pir::net

#endif
