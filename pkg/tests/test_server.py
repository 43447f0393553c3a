"""Tests for MCP server functionality."""

import threading
from unittest.mock import AsyncMock, patch

import pytest

from iterroots import service
from iterroots.config import IterRootsConfig
from iterroots.field import Backend
from iterroots.server import IterRootsMCPServer, serve


def get_tool_response_text(result):
    """Helper function to extract text from MCP tool response.

    Handles both old format (list of TextContent) and new format
    (tuple with content and result dict).
    """
    if isinstance(result, tuple):
        content, _ = result
        return content[0].text
    else:
        return result[0].text


@pytest.fixture
def server(exact_config):
    return IterRootsMCPServer(config=exact_config)


@pytest.mark.integration
class TestIterRootsMCPServer:
    """Test cases for IterRootsMCPServer class."""

    @patch("iterroots.server.IterRootsConfig.load_config")
    def test_init_loads_config(self, mock_load_config, exact_config):
        """Test IterRootsMCPServer initialization."""
        mock_load_config.return_value = exact_config

        server = IterRootsMCPServer()

        assert server.config == exact_config
        assert server.app is not None
        mock_load_config.assert_called_once()

    async def test_list_tools(self, server):
        """Test MCP tools listing."""
        tools = await server.app.list_tools()
        assert len(tools) == 9

        tool_names = [tool.name for tool in tools]
        expected_names = [
            "poly_iterate",
            "poly_compose",
            "quartic_sqrt",
            "quartic_classify",
            "quartic_curve",
            "iterative_root_solve",
            "linear_root",
            "poly_normalize",
            "verify_identities",
        ]
        assert set(tool_names) == set(expected_names)

    def test_get_streamable_http_app(self, server):
        """Test getting StreamableHTTP app for HTTP transport."""
        app = server.get_streamable_http_app()
        assert app is not None
        assert hasattr(app, "routes")

    async def test_call_tool_iterate(self, server):
        result = await server.app.call_tool("poly_iterate", {"poly": "z^2+1", "n": 2})
        assert get_tool_response_text(result) == "z^4+2z^2+2"

    async def test_call_tool_compose(self, server):
        result = await server.app.call_tool("poly_compose", {"f": "z^2", "g": "z+w"})
        assert get_tool_response_text(result) == "z^2+(2*w)*z+w^2"

    async def test_call_tool_sqrt(self, server):
        result = await server.app.call_tool("quartic_sqrt", {"quartic": "z^4"})
        response_text = get_tool_response_text(result)
        assert "count: 3" in response_text
        assert "w^2*z^2" in response_text

    async def test_call_tool_sqrt_obstruction(self, server):
        """An empty answer is reported as text, not raised."""
        result = await server.app.call_tool("quartic_sqrt", {"quartic": "z^4+z"})
        response_text = get_tool_response_text(result)
        assert response_text.startswith("Obstruction (membership)")
        assert "roots: none" in response_text

    async def test_call_tool_classify(self, server):
        result = await server.app.call_tool(
            "quartic_classify", {"quartic": "z^4+2z^3+2z^2+z"}
        )
        assert "count: 1" in get_tool_response_text(result)

    async def test_call_tool_curve(self, server):
        result = await server.app.call_tool("quartic_curve", {"beta": "2"})
        assert "z^2+z-1/4" in get_tool_response_text(result)

    async def test_call_tool_solve(self, server):
        result = await server.app.call_tool(
            "iterative_root_solve", {"poly": "z^4+2z^3+2z^2+z", "order": 2, "degree": 2}
        )
        assert "z^2+z" in get_tool_response_text(result)

    async def test_call_tool_solve_prime_degree(self, server):
        result = await server.app.call_tool(
            "iterative_root_solve", {"poly": "z^7", "order": 3}
        )
        response_text = get_tool_response_text(result)
        assert "Obstruction (degree)" in response_text
        assert "prime-degree" in response_text

    async def test_call_tool_linear_root(self, server):
        result = await server.app.call_tool(
            "linear_root", {"a": "4", "b": "3", "order": 2}
        )
        assert "2z+1" in get_tool_response_text(result)

    async def test_call_tool_normalize(self, server):
        result = await server.app.call_tool("poly_normalize", {"poly": "2z^2+z"})
        assert "L(z) = (1/2)*z" in get_tool_response_text(result)

    async def test_call_tool_verify(self, server):
        args = {"samples": 1, "seed": 5}
        result = await server.app.call_tool("verify_identities", args)
        response_text = get_tool_response_text(result)
        assert "all checks passed" in response_text
        assert "sampled round-trip: ok" in response_text

    async def test_tools_run_in_worker_thread(self, server, mocker):
        """Commands run via asyncio.to_thread, off the event-loop thread."""
        threads = []
        iterate_polynomial = service.iterate_polynomial

        def record_thread(*args):
            threads.append(threading.get_ident())
            return iterate_polynomial(*args)

        mocker.patch.object(service, "iterate_polynomial", side_effect=record_thread)
        result = await server.app.call_tool("poly_iterate", {"poly": "z+1", "n": 3})
        assert get_tool_response_text(result) == "z+3"
        assert threads and threads[0] != threading.get_ident()

    async def test_call_tool_parse_error(self, server):
        result = await server.app.call_tool("poly_iterate", {"poly": "z^^2", "n": 2})
        response_text = get_tool_response_text(result)
        assert response_text.startswith("Error:")
        assert "at position" in response_text

    async def test_approx_mode_server(self):
        server = IterRootsMCPServer(config=IterRootsConfig(mode=Backend.APPROX))
        result = await server.app.call_tool(
            "quartic_classify", {"quartic": "z^4+2z^3+3/2z^2+1/2z-7/16"}
        )
        assert "count: 3" in get_tool_response_text(result)


@pytest.mark.integration
class TestServe:
    async def test_help(self, capsys):
        await serve(["--help"])
        assert "iterroots-mcp-server" in capsys.readouterr().out

    @patch("iterroots.server.IterRootsConfig.load_config")
    async def test_stdio_flag(self, mock_load_config, exact_config):
        mock_load_config.return_value = exact_config
        with patch.object(
            IterRootsMCPServer, "run_stdio", new_callable=AsyncMock
        ) as run_stdio:
            await serve(["--stdio"])
        run_stdio.assert_awaited_once()

    @patch("iterroots.server.IterRootsConfig.load_config")
    async def test_transport_from_environment(
        self, mock_load_config, exact_config, monkeypatch
    ):
        mock_load_config.return_value = exact_config
        monkeypatch.setenv("MCP_TRANSPORT", "http")
        with patch.object(
            IterRootsMCPServer, "run_http", new_callable=AsyncMock
        ) as run_http:
            await serve([])
        run_http.assert_awaited_once()
