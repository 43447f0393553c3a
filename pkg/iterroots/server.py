"""iterroots MCP server over HTTP or stdio."""

import asyncio
import logging
import os
import sys
from typing import Callable, Optional

from mcp.server import FastMCP

from . import service
from .config import IterRootsConfig
from .errors import IterRootsError, ObstructionError

logger = logging.getLogger(__name__)


class IterRootsMCPServer:
    """MCP Server exposing the iterroots commands as tools."""

    def __init__(self, config: Optional[IterRootsConfig] = None):
        self.config = config if config is not None else IterRootsConfig.load_config()
        self.app = FastMCP(
            name="iterroots-mcp-server",
            instructions="Polynomial iterative roots over Q(w): compose and iterate "
            "polynomials, classify quartic square roots, and solve f^r = g.",
        )
        self._setup_tools()

    def _call(self, command: Callable, *args) -> str:
        """Run a service command and render its record; failures become text."""
        try:
            return command(*args, self.config).render_text()
        except ObstructionError as e:
            response = f"Obstruction ({e.gate}): {e}"
            if e.record is not None:
                response += f"\n\n{e.record.render_text()}"
            return response
        except (IterRootsError, ValueError) as e:
            logger.debug(f"{command.__name__} rejected input: {e}")
            return f"Error: {e}"

    async def _run(self, command: Callable, *args) -> str:
        """Run a command in a worker thread, off the event loop."""
        return await asyncio.to_thread(self._call, command, *args)

    def _setup_tools(self):
        """Setup MCP tools."""

        @self.app.tool(description="Iterate a polynomial: n-fold self-composition")
        async def poly_iterate(poly: str, n: int) -> str:
            """Compute f^n.

            Args:
                poly: Polynomial in z, e.g. 'z^2+w*z+1/2'
                n: Number of self-compositions (0 gives z)
            """
            return await self._run(service.iterate_polynomial, poly, n)

        @self.app.tool(description="Compose two polynomials f(g(z))")
        async def poly_compose(f: str, g: str) -> str:
            return await self._run(service.compose_polynomials, f, g)

        @self.app.tool(description="All polynomial square roots of a quartic")
        async def quartic_sqrt(quartic: str) -> str:
            """Find every quadratic f with f(f(z)) equal to the quartic.

            Args:
                quartic: Degree-4 polynomial; non-monic input is normalized first
            """
            return await self._run(service.sqrt_quartic, quartic)

        @self.app.tool(description="Classify a quartic by its number of square roots")
        async def quartic_classify(quartic: str) -> str:
            return await self._run(service.classify, quartic)

        @self.app.tool(description="Point of the curve C with b3 = beta and its roots")
        async def quartic_curve(beta: str) -> str:
            return await self._run(service.curve, beta)

        @self.app.tool(description="Find iterative roots f with f^order = poly")
        async def iterative_root_solve(
            poly: str, order: int, degree: Optional[int] = None
        ) -> str:
            """Solve f^order = poly by coefficient matching.

            Args:
                poly: Target polynomial g
                order: Iteration order r (at least 2)
                degree: Degree e of f; omitted means every e with e^r = deg g
            """
            return await self._run(service.solve_polynomial, poly, order, degree)

        @self.app.tool(description="Linear iterative roots of z -> a*z + b")
        async def linear_root(a: str, b: str, order: int) -> str:
            return await self._run(service.linear_roots, a, b, order)

        @self.app.tool(description="Monic linear conjugate of a polynomial")
        async def poly_normalize(poly: str) -> str:
            return await self._run(service.normalize_polynomial, poly)

        @self.app.tool(description="Run the symbolic identity checks")
        async def verify_identities(
            samples: int = 0, seed: Optional[int] = None
        ) -> str:
            """Check the surface, second-iterate and curve identities.

            Args:
                samples: Number of seeded random samples to check as well (default: 0)
                seed: Sampling seed (default: configured seed or 0)
            """
            return await self._run(service.verify, samples, seed)

    def get_streamable_http_app(self):
        """Get the FastMCP StreamableHTTP app for HTTP transport."""
        return self.app.streamable_http_app()

    async def run_stdio(self):
        """Run the MCP server over stdio (for local use)."""
        try:
            logger.info(
                f"Starting iterroots MCP server (stdio), mode {self.config.mode.value}"
            )
            await self.app.run_stdio_async()
        except Exception as e:
            logger.error(f"Server failed to start: {str(e)}")
            raise

    async def run_http(self, host: str = None, port: int = None):
        """Run the MCP server over HTTP transport."""
        try:
            host = host or self.config.http_host
            port = port or self.config.http_port

            logger.info(
                f"Starting iterroots MCP server (HTTP), mode {self.config.mode.value}"
            )
            logger.info(f"Server running on http://{host}:{port}")

            import uvicorn

            app = self.get_streamable_http_app()

            config = uvicorn.Config(app=app, host=host, port=port, log_level="info")
            server = uvicorn.Server(config)
            await server.serve()
        except Exception as e:
            logger.error(f"Server failed to start: {str(e)}")
            raise


def _print_help():
    print("iterroots MCP server")
    print("Usage:")
    print("  iterroots-mcp-server [--stdio|--http]")
    print("  iterroots-mcp-server --help")
    print("")
    print("Environment variables:")
    print("  MCP_TRANSPORT=stdio|http  (default: http)")
    print("  ITERROOTS_MODE=exact|approx, ITERROOTS_TOLERANCE, HTTP_HOST, HTTP_PORT")


async def serve(argv: Optional[list] = None):
    """Pick a transport from argv or MCP_TRANSPORT and run the server."""
    argv = sys.argv[1:] if argv is None else argv
    transport = os.getenv("MCP_TRANSPORT", "http").lower()

    if argv:
        if argv[0] == "--stdio":
            transport = "stdio"
        elif argv[0] == "--http":
            transport = "http"
        elif argv[0] == "--help":
            _print_help()
            return

    server = IterRootsMCPServer()
    level = logging.DEBUG if server.config.debug else logging.INFO
    logging.getLogger().setLevel(level)

    if transport == "stdio":
        await server.run_stdio()
    else:
        await server.run_http()


def main():
    """Main entry point."""
    logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    asyncio.run(serve())


if __name__ == "__main__":
    main()
