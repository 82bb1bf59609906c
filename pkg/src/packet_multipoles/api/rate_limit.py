"""Per-client rate limiting for the API."""

import re

from slowapi import Limiter
from starlette.requests import Request

from packet_multipoles.config import get_settings

CLIENT_ID = re.compile(r"[a-f0-9-]{32,64}", re.IGNORECASE)


def client_address(request: Request) -> str:
    """Socket peer, or the first X-Forwarded-For hop when the proxy is trusted."""
    if get_settings().api_trust_proxy:
        first = request.headers.get("X-Forwarded-For", "").split(",")[0].strip()
        if first:
            return first
    return request.client.host if request.client else "unknown"


def rate_limit_key(request: Request) -> str:
    """Client address, narrowed by a well-formed X-Client-ID header."""
    address = client_address(request)
    client_id = request.headers.get("X-Client-ID", "")
    if CLIENT_ID.fullmatch(client_id):
        return f"{address}:{client_id.lower()}"
    return address


limiter = Limiter(key_func=rate_limit_key)
