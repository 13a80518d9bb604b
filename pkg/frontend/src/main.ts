import { ApiClient } from "./api.js";
import { App } from "./app.js";

declare global {
  interface Window {
    API_BASE?: string;
  }
}

const params = new URLSearchParams(window.location.search);
const base =
  params.get("api") ?? window.API_BASE ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app element");
}
new App(root, new ApiClient(base)).init();
