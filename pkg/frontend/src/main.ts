import { ApiClient } from "./api.js";
import { PanelController } from "./panel.js";
import { mountPanel } from "./view.js";

const params = new URLSearchParams(window.location.search);
const apiBase = params.get("api") ?? "http://127.0.0.1:8400";

const controller = new PanelController(new ApiClient(apiBase));
mountPanel(document.getElementById("panel")!, controller);
