"""E2E tests for API endpoints."""

import pytest
from fastapi.testclient import TestClient
from starlette.requests import Request

from packet_multipoles.api.main import app
from packet_multipoles.api.rate_limit import rate_limit_key
from packet_multipoles.config import get_settings

VORTEX = {"packet": {"family": "lg_vortex", "ell": 1}, "quadrature": {"nodes_per_axis": 24}}


@pytest.fixture
def client():
    """Provide test client for FastAPI app."""
    return TestClient(app)


class TestHealthEndpoint:
    """Tests for the health check endpoint."""

    def test_health_returns_200(self, client):
        """Health endpoint should return 200 OK."""
        response = client.get("/health")
        assert response.status_code == 200

    def test_health_returns_status(self, client):
        """Health endpoint should return status and version."""
        data = client.get("/health").json()
        assert data["status"] == "healthy"
        assert "version" in data


class TestRootEndpoint:
    """Tests for the root endpoint."""

    def test_root_returns_api_info(self, client):
        """Root endpoint should return API information."""
        response = client.get("/")
        assert response.status_code == 200
        data = response.json()
        assert data["name"] == "Packet Multipoles API"
        assert data["docs"] == "/docs"


class TestMomentsEndpoint:
    """Tests for the moments endpoint."""

    def test_requires_config(self, client):
        """A request without a packet document is rejected."""
        response = client.post("/api/v1/moments", json={})
        assert response.status_code == 422

    def test_rejects_empty_paths(self, client):
        """At least one path is needed."""
        response = client.post("/api/v1/moments", json={"config": VORTEX, "paths": []})
        assert response.status_code == 422

    def test_vortex(self, client):
        """A vortex returns l/2m and agreeing paths."""
        response = client.post("/api/v1/moments", json={"config": VORTEX})
        assert response.status_code == 200
        data = response.json()
        assert data["ok"] is True
        assert data["paths"]["analytic"]["mu"]["z"] == 0.5
        assert data["paths"]["quadrature"]["mu"]["z"] == pytest.approx(0.5, abs=1e-9)
        assert "wall_time_s" not in data

    def test_general_phase_skips_analytic(self, client):
        """A user phase has no closed form; the skip is reported."""
        config = {"packet": {"family": "gauss_phase", "phase": "p_x*p_y"}, "quadrature": {"nodes_per_axis": 24}}
        data = client.post("/api/v1/moments", json={"config": config, "paths": ["analytic", "quadrature", "phase"]}).json()
        assert "analytic" in data["skipped"]
        assert data["deltas"]["quadrature-phase"] < 1e-9

    def test_divergent_phase(self, client):
        """Library errors come back as 422 with their code."""
        config = {"packet": {"family": "gauss_phase", "phase": "3*phi_p"}}
        response = client.post("/api/v1/moments", json={"config": config, "paths": ["quadrature"]})
        assert response.status_code == 422
        assert response.json()["detail"] == "vortex_divergence"

    def test_phase_syntax(self, client):
        """Parse errors carry the phase_syntax code and the offset."""
        config = {"packet": {"family": "gauss_phase", "phase": "p_x +"}}
        response = client.post("/api/v1/moments", json={"config": config})
        assert response.status_code == 422
        body = response.json()
        assert body["detail"] == "phase_syntax"
        assert "offset" in body["message"]


class TestEstimateEndpoint:
    """Tests for the estimate endpoint."""

    def test_estimate(self, client):
        """0.1 nm gives 1e-16 e cm^2."""
        data = client.get("/api/v1/estimate", params={"sigma_perp": "0.1 nm", "ell": 2}).json()
        assert data["airy_q_e_cm2"] == pytest.approx(1e-16)
        assert data["vortex_q_e_cm2"] == pytest.approx(2e-16)
        assert data["mu_magneton"] == 2.0

    def test_bad_unit(self, client):
        """Unknown units are a 422 with invalid_config."""
        response = client.get("/api/v1/estimate", params={"sigma_perp": "2 leagues"})
        assert response.status_code == 422
        assert response.json()["detail"] == "invalid_config"


class TestFieldEndpoints:
    """Tests for the field-map and fig1 endpoints."""

    def test_fieldmap(self, client):
        """Rows follow the requested grid."""
        body = {"config": VORTEX, "grid": {"n_theta": 2, "n_phi": 3, "r_min": 5.0}}
        rows = client.post("/api/v1/fieldmap", json=body).json()["rows"]
        assert len(rows) == 6
        assert rows[0]["r"] == pytest.approx(5.0)

    def test_fieldmap_bad_grid(self, client):
        """A non-positive radius is rejected."""
        response = client.post("/api/v1/fieldmap", json={"config": VORTEX, "grid": {"r_min": 0.0}})
        assert response.status_code == 422
        assert response.json()["detail"] == "invalid_config"

    def test_fig1(self, client):
        """The normalized equatorial field starts at its 3/2 maximum."""
        rows = client.get("/api/v1/fig1", params={"samples": 36}).json()["rows"]
        assert len(rows) == 36
        assert rows[0]["E_rho_normalized"] == pytest.approx(1.5)


def _request(headers, host="10.0.0.7"):
    scope = {
        "type": "http",
        "headers": [(k.lower().encode(), v.encode()) for k, v in headers.items()],
        "client": (host, 5000),
    }
    return Request(scope)


class TestRateLimitKey:
    """Tests for the per-client rate limit key."""

    def test_plain_address(self):
        """Without a client id the key is the peer address."""
        assert rate_limit_key(_request({})) == "10.0.0.7"

    def test_client_id_narrows_key(self):
        """A well-formed X-Client-ID is appended, lower-cased."""
        client_id = "ABCDEF01" * 4
        assert rate_limit_key(_request({"X-Client-ID": client_id})) == f"10.0.0.7:{client_id.lower()}"

    def test_malformed_client_id_ignored(self):
        """Anything but 32-64 hex digits and dashes is dropped."""
        assert rate_limit_key(_request({"X-Client-ID": "not-an-id"})) == "10.0.0.7"

    def test_forwarded_for_needs_trust(self, monkeypatch):
        """X-Forwarded-For is read only when the proxy is trusted."""
        request = _request({"X-Forwarded-For": "203.0.113.9, 10.0.0.1"})
        assert rate_limit_key(request) == "10.0.0.7"
        monkeypatch.setenv("API_TRUST_PROXY", "true")
        get_settings.cache_clear()
        assert rate_limit_key(request) == "203.0.113.9"
