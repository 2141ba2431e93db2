/**
 * Page wiring. All classification happens on the server; this file moves
 * JSON between the tracker, the websocket and the DOM.
 */

import { planDurationMs, PlanPlayer } from "./playback.js";
import { ContentBundle, SignPlan, TrackedHand } from "./protocol.js";
import { UiSession } from "./session.js";
import { FrameStreamer } from "./stream.js";
import { startTracker } from "./tracker.js";

const $ = <T extends HTMLElement>(id: string): T => {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
};

function serviceBase(): string {
  return ($<HTMLInputElement>("service-url").value || "http://localhost:8000").replace(/\/+$/, "");
}

function wsUrl(): string {
  return serviceBase().replace(/^http/, "ws") + "/stream";
}

// ---- live classification ----------------------------------------------

const session = new UiSession();
let streamer: FrameStreamer | null = null;

function connect(): void {
  const status = $("stream-status");
  const ws = new WebSocket(wsUrl());
  const s = new FrameStreamer(
    { send: (d) => ws.send(d) },
    {
      encode: { zeroZ: $<HTMLInputElement>("zero-z").checked },
      onPrediction: (msg) => {
        const view = session.accept(msg);
        $("raw-label").textContent = `${view.rawLabel} (${(view.rawConfidence * 100).toFixed(0)}%)`;
        $("smooth-label").textContent = view.smoothedLabel;
        appendDebugLine(`#${msg.seq} ${msg.label} ${msg.confidence.toFixed(3)}`);
      },
      onServiceError: (error, seq) => appendDebugLine(`#${seq ?? "?"} error: ${error}`),
    },
  );
  ws.onopen = () => {
    status.textContent = "connected";
    streamer = s;
  };
  ws.onmessage = (ev) => s.handleReply(String(ev.data));
  ws.onclose = () => {
    status.textContent = "disconnected";
    streamer = null;
  };
  ws.onerror = () => {
    status.textContent = "connection failed";
  };
}

function appendDebugLine(line: string): void {
  const pane = $("debug-pane");
  pane.textContent = (pane.textContent + "\n" + line).split("\n").slice(-200).join("\n");
}

// The tracker callback fires per camera frame; the streamer decides what
// is actually sent (pacing + one-in-flight).
function onHands(hands: TrackedHand[]): void {
  $("hand-count").textContent = hands.length === 0 ? "no hand in view" : `${hands.length} hand(s)`;
  if (hands.length === 0) {
    session.idle();
    $("smooth-label").textContent = "-";
    return;
  }
  streamer?.offerHands(hands);
  $("fps").textContent = streamer ? streamer.measuredFps().toFixed(1) + " fps" : "";
}

// ---- sign-plan playback -------------------------------------------------

const player = new PlanPlayer({
  resolveAsset: (assetId) => `${serviceBase()}/assets/${assetId}.gif`,
  onCard: (card) => {
    const stage = $("stage");
    stage.innerHTML = "";
    if (card.kind === "letter") {
      const div = document.createElement("div");
      div.className = "letter-card";
      div.textContent = card.character;
      stage.appendChild(div);
    } else {
      const img = document.createElement("img");
      img.className = "gif-card";
      img.alt = card.phrase;
      img.src = card.src ?? "";
      // missing asset: swap in a labeled placeholder, keep playing
      img.onerror = () => {
        const div = document.createElement("div");
        div.className = "gif-card placeholder";
        div.textContent = card.phrase;
        stage.replaceChildren(div);
      };
      stage.appendChild(img);
      const caption = document.createElement("div");
      caption.className = "caption";
      caption.textContent = card.phrase;
      stage.appendChild(caption);
    }
  },
  onDone: (terminal) => {
    $("stage").innerHTML = terminal ? "<div class='ended'>session ended</div>" : "";
  },
});

async function translateAndPlay(): Promise<void> {
  const text = $<HTMLInputElement>("say-text").value;
  const resp = await fetch(serviceBase() + "/translate", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ text }),
  });
  if (!resp.ok) {
    $("stage").textContent = `translate failed: ${resp.status}`;
    return;
  }
  const plan = (await resp.json()) as SignPlan;
  $("plan-info").textContent = `${plan.items.length} items, ~${(planDurationMs(plan) / 1000).toFixed(1)}s`;
  await player.play(plan);
}

// ---- news content -------------------------------------------------------

async function loadContent(): Promise<void> {
  const lang = $<HTMLInputElement>("content-lang").value || "english";
  const topic = $<HTMLInputElement>("content-topic").value;
  const resp = await fetch(`${serviceBase()}/content?lang=${encodeURIComponent(lang)}&topic=${encodeURIComponent(topic)}`);
  const panel = $("content-panel");
  if (!resp.ok) {
    panel.textContent = `content failed: ${resp.status}`;
    return;
  }
  const bundle = (await resp.json()) as ContentBundle;
  panel.innerHTML = "";
  if (bundle.items.length === 0) {
    panel.textContent = `no articles (${bundle.status})`;
    return;
  }
  for (const entry of bundle.items) {
    const card = document.createElement("div");
    card.className = "article";
    const h = document.createElement("h3");
    h.textContent = `${entry.article.title} (${entry.article.date})`;
    const p = document.createElement("p");
    p.textContent = entry.summary;
    const t = document.createElement("small");
    t.textContent = `spoken: ${entry.speech_plan.total_duration.toFixed(1)}s in ${entry.speech_plan.segments.length} segments`;
    card.append(h, p, t);
    panel.appendChild(card);
  }
}

// ---- boot ---------------------------------------------------------------

window.addEventListener("DOMContentLoaded", () => {
  $("connect").onclick = connect;
  $("say").onclick = () => void translateAndPlay();
  $("stop-playback").onclick = () => player.stop();
  $("load-content").onclick = () => void loadContent();
  $("commit").onclick = () => {
    $("spelled").textContent = session.commit();
  };
  $("clear-spelled").onclick = () => {
    session.clearSpelled();
    $("spelled").textContent = "";
  };
  $("start-camera").onclick = () => {
    void startTracker({
      video: $<HTMLVideoElement>("video"),
      onHands,
      onStatus: (s) => ($("tracker-status").textContent = s),
    }).catch(() => undefined); // status line already shows the failure
  };
});
