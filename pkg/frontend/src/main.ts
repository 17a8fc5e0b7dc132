import { mountApp } from "./app.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";
const root = document.getElementById("app");
if (!root) throw new Error("#app root missing");
const app = mountApp(root, baseUrl);

const sessionId = params.get("session");
if (sessionId) void app.store.attach(sessionId);
